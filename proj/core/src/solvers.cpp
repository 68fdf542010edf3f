#include "latred/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace latred {

// --- Alphabet --------------------------------------------------------------------

Alphabet Alphabet::bounded(int bound) {
  if (bound < 1) throw std::invalid_argument("Alphabet::bounded: bound must be >= 1");
  return Alphabet(Kind::kBounded, bound);
}

Alphabet Alphabet::parse(const std::string& name) {
  if (name == "pm_one") return pm_one();
  if (name == "ternary" || name == "ternary_nonzero") return ternary();
  const std::string prefix = "bounded:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string rest = name.substr(prefix.size());
    std::size_t pos = 0;
    int b = 0;
    try {
      b = std::stoi(rest, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != rest.size()) throw std::invalid_argument("bad alphabet: " + name);
    return bounded(b);
  }
  throw std::invalid_argument("unknown alphabet: " + name);
}

bool Alphabet::contains(int v) const noexcept {
  switch (kind_) {
    case Kind::kPmOne: return v == 1 || v == -1;
    case Kind::kTernary: return v >= -1 && v <= 1;
    case Kind::kBounded: return v >= -bound_ && v <= bound_;
  }
  return false;
}

std::string Alphabet::name() const {
  switch (kind_) {
    case Kind::kPmOne: return "pm_one";
    case Kind::kTernary: return "ternary";
    case Kind::kBounded: return "bounded:" + std::to_string(bound_);
  }
  return "unknown";
}

bool Alphabet::admits(std::span<const int> x) const noexcept {
  if (x.empty()) return false;
  bool nonzero = false;
  for (int v : x) {
    if (!contains(v)) return false;
    nonzero = nonzero || v != 0;
  }
  return nonzero;
}

// --- helpers -----------------------------------------------------------------------

double discrepancy(const Matrix& a, std::span<const int> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("discrepancy: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

namespace {

Matrix row_matrix(std::span<const double> a) {
  Matrix m(1, a.size());
  std::copy(a.begin(), a.end(), m.data().begin());
  return m;
}

void normalize_sign(std::vector<int>& x) {
  const auto first = std::find_if(x.begin(), x.end(), [](int v) { return v != 0; });
  if (first != x.end() && *first < 0) {
    for (int& v : x) v = -v;
  }
}

class Enumerator {
 public:
  Enumerator(const Matrix& a, const Alphabet& alphabet)
      : a_(a), bound_(alphabet.bound()), allow_zero_(alphabet.allows_zero()),
        partial_((a.cols() + 1) * a.rows(), 0.0), x_(a.cols(), 0) {}

  SolverOutput run() {
    descend(0, false);
    SolverOutput out;
    out.x = std::move(best_x_);
    out.value = best_;
    out.budget_used = leaves_;
    return out;
  }

 private:
  void descend(std::size_t j, bool seen_nonzero) {
    const std::size_t n = a_.rows();
    const std::size_t m = a_.cols();
    const double* parent = partial_.data() + j * n;
    if (j == m) {
      if (!seen_nonzero) return;
      ++leaves_;
      double value = 0.0;
      for (std::size_t i = 0; i < n; ++i) value = std::max(value, std::abs(parent[i]));
      if (value < best_) {
        best_ = value;
        best_x_ = x_;
      }
      return;
    }
    double* child = partial_.data() + (j + 1) * n;
    // Before the first nonzero entry only 0 and positive digits are allowed.
    const int lo = seen_nonzero ? -bound_ : (allow_zero_ ? 0 : 1);
    for (int d = lo; d <= bound_; ++d) {
      if (d == 0 && !allow_zero_) continue;
      x_[j] = d;
      for (std::size_t i = 0; i < n; ++i) child[i] = parent[i] + a_(i, j) * d;
      descend(j + 1, seen_nonzero || d != 0);
    }
    x_[j] = 0;
  }

  const Matrix& a_;
  int bound_;
  bool allow_zero_;
  std::vector<double> partial_;
  std::vector<int> x_;
  std::vector<int> best_x_;
  double best_ = std::numeric_limits<double>::infinity();
  std::uint64_t leaves_ = 0;
};

}  // namespace

SolverOutput brute_force_sbp(const Matrix& a, const Alphabet& alphabet) {
  const std::size_t m = a.cols();
  if (m == 0 || a.rows() == 0) throw std::invalid_argument("brute_force_sbp: empty instance");
  if (alphabet.kind() == Alphabet::Kind::kPmOne) {
    if (m > 30) throw std::invalid_argument("brute_force_sbp: m > 30 exceeds the 2^m cap");
  } else {
    const double count = std::pow(2.0 * alphabet.bound() + 1.0, static_cast<double>(m));
    if (count > 5e7) {
      throw std::invalid_argument("brute_force_sbp: (2B+1)^m exceeds the enumeration cap");
    }
  }
  SolverOutput out = Enumerator(a, alphabet).run();
  out.solver = "brute_sbp";
  return out;
}

SolverOutput brute_force_npp(std::span<const double> a) {
  SolverOutput out = brute_force_sbp(row_matrix(a), Alphabet::pm_one());
  out.solver = "brute_npp";
  return out;
}

SolverOutput karmarkar_karp(std::span<const double> a) {
  const std::size_t m = a.size();
  if (m == 0) throw std::invalid_argument("karmarkar_karp: empty input");

  struct Item {
    double value;
    std::size_t node;
  };
  // Largest value first; equal values by creation order (node ids increase).
  auto later = [](const Item& p, const Item& q) {
    if (p.value != q.value) return p.value < q.value;
    return p.node > q.node;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);
  for (std::size_t i = 0; i < m; ++i) heap.push({std::abs(a[i]), i});

  struct Merge {
    std::size_t big, small;
  };
  std::vector<Merge> merges;
  merges.reserve(m);
  while (heap.size() > 1) {
    const Item big = heap.top();
    heap.pop();
    const Item small = heap.top();
    heap.pop();
    const std::size_t node = m + merges.size();
    merges.push_back({big.node, small.node});
    heap.push({big.value - small.value, node});
  }
  const Item root = heap.top();

  std::vector<int> sign(m + merges.size(), 1);
  for (std::size_t k = merges.size(); k-- > 0;) {
    const int s = sign[m + k];
    sign[merges[k].big] = s;
    sign[merges[k].small] = -s;
  }
  SolverOutput out;
  out.x.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.x[i] = a[i] < 0 ? -sign[i] : sign[i];
  normalize_sign(out.x);
  out.value = root.value;
  out.solver = "karmarkar_karp";
  out.budget_used = merges.size();
  return out;
}

SolverOutput random_search(const Matrix& a, const Alphabet& alphabet, std::uint64_t budget,
                           Rng& rng, bool dedup, std::optional<double> stop_at) {
  if (budget == 0) throw std::invalid_argument("random_search: budget must be >= 1");
  const std::size_t m = a.cols();
  if (m == 0) throw std::invalid_argument("random_search: empty instance");
  if (dedup && (alphabet.kind() != Alphabet::Kind::kPmOne || m > 62)) {
    throw std::invalid_argument("random_search: dedup requires pm_one and m <= 62");
  }
  SolverOutput out;
  out.solver = "random_search";
  out.value = std::numeric_limits<double>::infinity();

  std::vector<int> x(m);
  auto consider = [&]() {
    ++out.budget_used;
    const double v = discrepancy(a, x);
    if (v < out.value) {
      out.value = v;
      out.x = x;
    }
    return stop_at && out.value <= *stop_at;
  };

  if (dedup) {
    // Sign-normalized vectors are indexed by the m-1 trailing bits.
    const std::uint64_t space = std::uint64_t{1} << (m - 1);
    auto decode = [&](std::uint64_t mask) {
      x[0] = 1;
      for (std::size_t j = 1; j < m; ++j) x[j] = ((mask >> (j - 1)) & 1U) ? -1 : 1;
    };
    if (budget >= space) {
      for (std::uint64_t mask = 0; mask < space; ++mask) {
        decode(mask);
        if (consider()) break;
      }
      return out;
    }
    std::unordered_set<std::uint64_t> seen;
    while (seen.size() < budget) {
      const auto mask = static_cast<std::uint64_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(space - 1)));
      if (!seen.insert(mask).second) continue;
      decode(mask);
      if (consider()) break;
    }
    return out;
  }

  const int b = alphabet.bound();
  for (std::uint64_t draw = 0; draw < budget; ++draw) {
    do {
      for (auto& v : x) {
        if (alphabet.kind() == Alphabet::Kind::kPmOne) {
          v = rng.uniform_int(0, 1) == 0 ? -1 : 1;
        } else {
          v = static_cast<int>(rng.uniform_int(-b, b));
        }
      }
    } while (!alphabet.admits(x));
    normalize_sign(x);
    if (consider()) break;
  }
  return out;
}

// --- Solver implementations ---------------------------------------------------------

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kBruteSbp: return "brute_sbp";
    case SolverKind::kBruteNpp: return "brute_npp";
    case SolverKind::kKarmarkarKarp: return "karmarkar_karp";
    case SolverKind::kRandomSearch: return "random_search";
    case SolverKind::kAlwaysFail: return "always_fail";
  }
  return "unknown";
}

SolverKind solver_kind_from_string(const std::string& name) {
  if (name == "brute_sbp" || name == "brute") return SolverKind::kBruteSbp;
  if (name == "brute_npp") return SolverKind::kBruteNpp;
  if (name == "karmarkar_karp" || name == "kk") return SolverKind::kKarmarkarKarp;
  if (name == "random_search" || name == "random") return SolverKind::kRandomSearch;
  if (name == "always_fail") return SolverKind::kAlwaysFail;
  throw std::invalid_argument("unknown solver: " + name);
}

namespace {

class BruteSbpSolver final : public Solver {
 public:
  explicit BruteSbpSolver(Alphabet alphabet) : alphabet_(alphabet) {}
  SolverOutput solve(const Matrix& a, double, Rng&) const override {
    return brute_force_sbp(a, alphabet_);
  }
  std::string name() const override { return "brute_sbp"; }
  Alphabet alphabet() const override { return alphabet_; }

 private:
  Alphabet alphabet_;
};

class BruteNppSolver final : public Solver {
 public:
  SolverOutput solve(const Matrix& a, double, Rng&) const override {
    if (a.rows() != 1) throw std::invalid_argument("brute_npp: expects a single row");
    return brute_force_npp(a.row(0));
  }
  std::string name() const override { return "brute_npp"; }
  Alphabet alphabet() const override { return Alphabet::pm_one(); }
};

class KarmarkarKarpSolver final : public Solver {
 public:
  SolverOutput solve(const Matrix& a, double, Rng&) const override {
    if (a.rows() != 1) throw std::invalid_argument("karmarkar_karp: expects a single row");
    return karmarkar_karp(a.row(0));
  }
  std::string name() const override { return "karmarkar_karp"; }
  Alphabet alphabet() const override { return Alphabet::pm_one(); }
};

class RandomSearchSolver final : public Solver {
 public:
  RandomSearchSolver(Alphabet alphabet, std::uint64_t budget, bool dedup)
      : alphabet_(alphabet), budget_(budget), dedup_(dedup) {}
  SolverOutput solve(const Matrix& a, double kappa_target, Rng& rng) const override {
    return random_search(a, alphabet_, budget_, rng, dedup_, kappa_target);
  }
  std::string name() const override { return "random_search"; }
  Alphabet alphabet() const override { return alphabet_; }

 private:
  Alphabet alphabet_;
  std::uint64_t budget_;
  bool dedup_;
};

// Ignores the instance and returns the all-ones vector.
class AlwaysFailSolver final : public Solver {
 public:
  SolverOutput solve(const Matrix& a, double, Rng&) const override {
    SolverOutput out;
    out.x.assign(a.cols(), 1);
    out.value = discrepancy(a, out.x);
    out.solver = "always_fail";
    out.budget_used = 1;
    return out;
  }
  std::string name() const override { return "always_fail"; }
  Alphabet alphabet() const override { return Alphabet::pm_one(); }
};

}  // namespace

std::unique_ptr<Solver> make_solver(const SolverSpec& spec) {
  const bool pm_one = spec.alphabet.kind() == Alphabet::Kind::kPmOne;
  switch (spec.kind) {
    case SolverKind::kBruteSbp: return std::make_unique<BruteSbpSolver>(spec.alphabet);
    case SolverKind::kBruteNpp:
      if (!pm_one) throw std::invalid_argument("brute_npp supports the pm_one alphabet only");
      return std::make_unique<BruteNppSolver>();
    case SolverKind::kKarmarkarKarp:
      if (!pm_one) throw std::invalid_argument("karmarkar_karp supports the pm_one alphabet only");
      return std::make_unique<KarmarkarKarpSolver>();
    case SolverKind::kRandomSearch:
      return std::make_unique<RandomSearchSolver>(spec.alphabet, spec.budget, spec.dedup);
    case SolverKind::kAlwaysFail:
      if (!pm_one) throw std::invalid_argument("always_fail supports the pm_one alphabet only");
      return std::make_unique<AlwaysFailSolver>();
  }
  throw std::invalid_argument("make_solver: unknown kind");
}

}  // namespace latred
