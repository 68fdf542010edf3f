#include "latred/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace latred {

// --- Basis -------------------------------------------------------------------

Basis::Basis(RationalMatrix entries) : exact_(std::move(entries)) {
  if (exact_.rows() == 0 || exact_.rows() != exact_.cols()) {
    throw std::invalid_argument("Basis: expected a non-empty square matrix");
  }
  det_ = latred::determinant(exact_);
  if (det_ == 0) throw std::invalid_argument("Basis: matrix is singular");
  inverse_ = inverse(exact_);
  approx_ = to_double(exact_);
  approx_inverse_ = to_double(inverse_);
}

Basis Basis::from_integers(const IntegerMatrix& entries) { return Basis(to_rational(entries)); }

// --- SublatticePair ------------------------------------------------------------

SublatticePair::SublatticePair(Basis b, const IntegerMatrix& m)
    : b_(std::move(b)), s_(multiply(b_.exact(), to_rational(m))), m_(m) {
  if (m_.rows() != b_.dimension() || m_.cols() != b_.dimension()) {
    throw std::invalid_argument("SublatticePair: M has the wrong shape");
  }
  const BigInt det = determinant(m_);
  if (det == 0) throw std::invalid_argument("SublatticePair: M is singular");
  index_ = det < 0 ? BigInt(-det) : det;

  // adj(M) = det * M^{-1}; rescale so that M * adjugate_ = index * I.
  const RationalMatrix m_inv = inverse(to_rational(m_));
  const std::size_t n = m_.rows();
  adjugate_ = IntegerMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational entry = m_inv(i, j) * Rational(index_);
      if (boost::multiprecision::denominator(entry) != 1) {
        throw std::logic_error("SublatticePair: non-integral adjugate");
      }
      adjugate_(i, j) = boost::multiprecision::numerator(entry);
    }
  hermite_ = hermite_normal_form(m_);
}

SublatticePair SublatticePair::from_bases(Basis b, Basis s) {
  const RationalMatrix m = multiply(b.exact_inverse(), s.exact());
  IntegerMatrix mi(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (boost::multiprecision::denominator(m(i, j)) != 1) {
        throw std::invalid_argument("SublatticePair: columns of S are not in L(B)");
      }
      mi(i, j) = boost::multiprecision::numerator(m(i, j));
    }
  return SublatticePair(std::move(b), mi);
}

IntVector SublatticePair::coset_representative(const IntVector& label) const {
  const std::size_t n = m_.rows();
  if (label.size() != n) throw std::invalid_argument("coset_representative: wrong size");
  // w = adj(M) z mod index, so that M^{-1} (B^{-1} v) = w / index lies in [0, 1)^n.
  std::vector<BigInt> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += adjugate_(i, j) * label[j];
    w[i] = mod_floor(acc, index_);
  }
  IntVector coeffs(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += m_(i, j) * w[j];
    if (acc % index_ != 0) throw std::logic_error("coset_representative: inexact division");
    coeffs[i] = to_int64(acc / index_);
  }
  return coeffs;
}

// --- profiles ------------------------------------------------------------------

std::string to_string(InstanceProfile profile) {
  switch (profile) {
    case InstanceProfile::kDiagonal: return "diagonal";
    case InstanceProfile::kQary: return "qary";
    case InstanceProfile::kRotated: return "rotated";
  }
  return "unknown";
}

InstanceProfile instance_profile_from_string(const std::string& name) {
  if (name == "diagonal") return InstanceProfile::kDiagonal;
  if (name == "qary") return InstanceProfile::kQary;
  if (name == "rotated") return InstanceProfile::kRotated;
  throw std::invalid_argument("unknown instance profile: " + name);
}

// --- operations ------------------------------------------------------------------

namespace {

void require_finite(std::span<const double> x, const char* what) {
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

void require_dimension(const Basis& b, std::span<const double> x, const char* what) {
  if (x.size() != b.dimension()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

Vector mod_parallelepiped(const Basis& b, std::span<const double> x) {
  require_dimension(b, x, "mod_parallelepiped");
  require_finite(x, "mod_parallelepiped");
  Vector coords = multiply(b.inverse_matrix(), x);
  for (double& c : coords) c = frac(c);
  return multiply(b.matrix(), coords);
}

std::optional<IntVector> lattice_membership(const Basis& b, std::span<const double> s,
                                            double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("lattice_membership: tau must be positive");
  require_dimension(b, s, "lattice_membership");
  if (std::any_of(s.begin(), s.end(), [](double v) { return !std::isfinite(v); })) {
    return std::nullopt;
  }
  const Vector z = multiply(b.inverse_matrix(), s);
  IntVector rounded(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = std::round(z[i]);
    if (std::abs(z[i] - r) > tau) return std::nullopt;
    rounded[i] = static_cast<std::int64_t>(r);
  }
  return rounded;
}

LatticeVector sample_coset_uniform(const SublatticePair& pair, Rng& rng) {
  const std::size_t n = pair.b().dimension();
  const IntegerMatrix& h = pair.hermite().h;
  IntVector label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = rng.uniform_int(0, to_int64(h(i, i)) - 1);
  }
  IntVector coeffs = pair.coset_representative(label);
  Vector coords = multiply(pair.b().matrix(), std::span<const std::int64_t>(coeffs));
  return {std::move(coords), std::move(coeffs)};
}

std::optional<double> successive_minimum_by_enumeration(const Basis& b, double radius) {
  const std::size_t n = b.dimension();
  const Matrix& binv = b.inverse_matrix();
  std::vector<std::int64_t> bound(n);
  double box = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += binv(i, j) * binv(i, j);
    bound[i] = static_cast<std::int64_t>(std::floor(std::sqrt(row) * radius + 1e-9));
    box *= static_cast<double>(2 * bound[i] + 1);
  }
  if (box > 5e7) throw std::invalid_argument("successive_minimum_by_enumeration: box too large");

  struct Candidate {
    double norm;
    IntVector z;
  };
  std::vector<Candidate> candidates;
  IntVector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = -bound[i];
  const double radius_sq = radius * radius * (1.0 + 1e-12);
  while (true) {
    if (std::any_of(z.begin(), z.end(), [](std::int64_t v) { return v != 0; })) {
      const Vector v = multiply(b.matrix(), std::span<const std::int64_t>(z));
      double sq = 0.0;
      for (double c : v) sq += c * c;
      if (sq <= radius_sq) candidates.push_back({std::sqrt(sq), z});
    }
    std::size_t k = 0;
    while (k < n && z[k] == bound[k]) {
      z[k] = -bound[k];
      ++k;
    }
    if (k == n) break;
    ++z[k];
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& c) { return a.norm < c.norm; });

  // Coefficient vectors are independent iff the lattice vectors are, so the
  // rank test runs on exact integers.
  std::vector<std::vector<Rational>> echelon;
  std::vector<std::size_t> pivots;
  std::size_t found = 0;
  for (const Candidate& c : candidates) {
    std::vector<Rational> v(c.z.begin(), c.z.end());
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      const std::size_t p = pivots[r];
      if (v[p] == 0) continue;
      const Rational f = v[p] / echelon[r][p];
      for (std::size_t j = 0; j < n; ++j) v[j] -= f * echelon[r][j];
    }
    const auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(it - v.begin()));
    echelon.push_back(std::move(v));
    if (++found == n) return c.norm;
  }
  return std::nullopt;
}

namespace {

RationalMatrix givens_product(std::size_t n) {
  // Exact rotations from Pythagorean triples (3,4,5) and (5,12,13).
  RationalMatrix r = RationalMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Rational c = (i % 2 == 0) ? Rational(3, 5) : Rational(5, 13);
    const Rational s = (i % 2 == 0) ? Rational(4, 5) : Rational(12, 13);
    RationalMatrix g = RationalMatrix::identity(n);
    g(i, i) = c;
    g(i, i + 1) = -s;
    g(i + 1, i) = s;
    g(i + 1, i + 1) = c;
    r = multiply(g, r);
  }
  return r;
}

}  // namespace

PlantedIncGDDInstance generate_planted_instance(std::size_t n, InstanceProfile profile,
                                                double gamma, std::uint64_t seed,
                                                const PlantedOptions& options) {
  if (n == 0) throw std::invalid_argument("generate_planted_instance: n must be >= 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("generate_planted_instance: gamma must be >= 1");
  if (!(options.radius_factor > 1.0)) {
    throw std::invalid_argument("generate_planted_instance: radius_factor must exceed 1");
  }
  if (options.sublattice_scale < 1) {
    throw std::invalid_argument("generate_planted_instance: sublattice_scale must be >= 1");
  }
  Rng root(seed);

  std::vector<std::int64_t> diag = options.diagonal;
  if (profile != InstanceProfile::kQary) {
    if (diag.empty()) {
      Rng drng = root.fork("diagonal");
      diag.resize(n);
      for (auto& d : diag) d = drng.uniform_int(1, 4);
    }
    if (diag.size() != n) {
      throw std::invalid_argument("generate_planted_instance: diagonal has the wrong length");
    }
    if (std::any_of(diag.begin(), diag.end(), [](std::int64_t d) { return d < 1; })) {
      throw std::invalid_argument("generate_planted_instance: diagonal entries must be >= 1");
    }
  }

  RationalMatrix b(n, n);
  double lambda_n = 0.0;
  switch (profile) {
    case InstanceProfile::kDiagonal: {
      for (std::size_t i = 0; i < n; ++i) b(i, i) = Rational(diag[i]);
      lambda_n = static_cast<double>(*std::max_element(diag.begin(), diag.end()));
      break;
    }
    case InstanceProfile::kRotated: {
      RationalMatrix d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = Rational(diag[i]);
      b = multiply(givens_product(n), d);
      lambda_n = static_cast<double>(*std::max_element(diag.begin(), diag.end()));
      break;
    }
    case InstanceProfile::kQary: {
      if (n < 2 || n > 4) {
        throw std::invalid_argument(
            "generate_planted_instance: qary profile supports 2 <= n <= 4 (lambda_n is "
            "found by enumeration)");
      }
      Rng qrng = root.fork("qary");
      std::int64_t q = options.modulus;
      if (q == 0) {
        static constexpr std::int64_t kModuli[] = {5, 7, 11, 13};
        q = kModuli[qrng.uniform_int(0, 3)];
      }
      if (q < 2) throw std::invalid_argument("generate_planted_instance: modulus must be >= 2");
      b(0, 0) = 1;
      for (std::size_t i = 1; i < n; ++i) {
        b(i, 0) = Rational(qrng.uniform_int(1, q - 1));
        b(i, i) = Rational(q);
      }
      const auto lambda = successive_minimum_by_enumeration(Basis(b), static_cast<double>(q));
      if (!lambda) throw std::logic_error("qary profile: enumeration failed");
      lambda_n = *lambda;
      break;
    }
  }

  Basis basis(std::move(b));
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = options.sublattice_scale;

  Rng trng = root.fork("target");
  Vector t(n);
  const double box = options.target_box * lambda_n;
  for (double& ti : t) ti = box * (2.0 * trng.uniform01() - 1.0);

  PlantedIncGDDInstance inst{SublatticePair(std::move(basis), m), std::move(t),
                             options.radius_factor * gamma * lambda_n,
                             lambda_n,
                             gamma,
                             profile,
                             seed};
  return inst;
}

IncGDDVerdict verify_incgdd_solution(const PlantedIncGDDInstance& inst,
                                     std::span<const double> s, double tau) {
  IncGDDVerdict verdict;
  verdict.coeffs = lattice_membership(inst.pair.b(), s, tau);
  verdict.member = verdict.coeffs.has_value();
  Vector diff(s.begin(), s.end());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= inst.t[i];
  verdict.dist = norm2(diff);
  verdict.bound = inst.r + max_column_norm(inst.pair.s().matrix()) / 8.0;
  verdict.valid = verdict.member && verdict.dist <= verdict.bound;
  return verdict;
}

}  // namespace latred
