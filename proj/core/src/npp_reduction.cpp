#include "latred/npp_reduction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "latred/gaussian.hpp"

namespace latred {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Below this q m the float value of e'' resolves the 1/q grid with room to
// spare: q m 2^-52 <= 1/16.
bool grid_resolvable(const BigInt& q, std::uint64_t m) {
  return to_double(q) * static_cast<double>(m) * std::ldexp(1.0, -52) <= 1.0 / 16.0;
}

}  // namespace

std::optional<std::uint64_t> npp_formula_m(std::size_t n, double eps) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Float50 fn(static_cast<unsigned long long>(n));
  Float50 exponent = 10 * pow(fn, 1 / (1 + Float50(eps)));
  const Float50 nearest = round(exponent);
  if (abs(exponent - nearest) < Float50(1e-12)) exponent = nearest;
  if (exponent >= 63) return std::nullopt;
  return ceil(pow(Float50(2), exponent)).convert_to<std::uint64_t>();
}

double npp_kappa_target(std::uint64_t m, double eps) {
  const double lg = std::log2(static_cast<double>(m));
  return std::exp2(-std::pow(lg, 2.0 + eps)) * std::sqrt(static_cast<double>(m));
}

double npp_gamma(std::uint64_t m) {
  return 4.0 * static_cast<double>(m) * std::log(static_cast<double>(m));
}

NppParams derive_npp_params(const PlantedIncGDDInstance& inst, double eps,
                            std::optional<std::uint64_t> override_m, std::uint64_t m_budget) {
  const std::size_t n = inst.dimension();
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  NppParams p;
  p.eps = eps;
  p.formula_m = npp_formula_m(n, eps);
  if (override_m) {
    p.m = *override_m;
    p.override_m = override_m;
    p.regime = Regime::kOverride;
  } else {
    if (!p.formula_m || *p.formula_m > m_budget) {
      throw std::invalid_argument(
          "formula m = " + (p.formula_m ? std::to_string(*p.formula_m) : std::string("> 2^63")) +
          " exceeds the budget of " + std::to_string(m_budget) + " entries; use override_m");
    }
    p.m = *p.formula_m;
    p.regime = Regime::kPaperParams;
  }
  if (p.m < n || p.m < 2) throw std::invalid_argument("m must be >= max(n, 2)");
  p.sigma2 = std::log(static_cast<double>(p.m));
  p.sigma1 = inst.r / (4.0 * static_cast<double>(p.m));
  p.gamma = npp_gamma(p.m);
  p.kappa_target = npp_kappa_target(p.m, eps);
  p.gamma_condition_ok = !inst.lambda_known() || inst.r > p.gamma * inst.lambda_n;
  return p;
}

Vector NppTranscript::w() const {
  Vector out(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) out[j] = y[j] + static_cast<double>(k[j]);
  return out;
}

std::pair<NppInstance, NppTranscript> build_npp_instance(const PlantedIncGDDInstance& inst,
                                                         const NppParams& params, Rng& rng) {
  const std::size_t n = inst.dimension();
  const std::size_t m = params.m;
  if (m == 0 || !(params.sigma1 > 0.0) || !(params.sigma2 > 0.0)) {
    throw std::invalid_argument("build_npp_instance: inconsistent parameters");
  }
  NppTranscript tr{inst, params, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  Rng u_rng = rng.fork("U");
  Rng v_rng = rng.fork("V");
  Rng f_rng = rng.fork("f");
  Rng d_rng = rng.fork("discrete");

  const std::vector<std::uint64_t> primes = select_primes(n, m);
  tr.crt = crt_build(primes);
  tr.u = sample_target_columns(inst, m, params.sigma1, {}, u_rng);
  CosetBatch cosets = sample_coset_columns(inst.pair, m, v_rng);
  tr.v = std::move(cosets.v);
  tr.v_coeffs = std::move(cosets.coeffs);
  tr.a_mod = reduce_mod_sublattice(inst.pair, tr.v, tr.u);
  tr.a_floor = floor_p_numerators(tr.a_mod, primes);

  const double q = to_double(tr.crt.q);
  const double s = params.sigma2 * std::sqrt(2.0 * std::numbers::pi);
  const auto tail = static_cast<std::int64_t>(std::ceil(8.0 * s)) + 1;
  tr.grid.resize(m);
  tr.f.resize(m);
  tr.y.resize(m);
  tr.k.resize(m);
  tr.a.resize(m);
  std::vector<std::int64_t> column(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = tr.a_floor(i, j);
    tr.grid[j] = tr.crt.forward(column);
    tr.f[j] = f_rng.uniform01() / q;
    tr.y[j] = frac(to_double(Rational(tr.grid[j], tr.crt.q)) + tr.f[j]);
    const DiscreteGaussian1D table(tr.y[j], s, tail);
    tr.k[j] = table.sample(d_rng);
    tr.a[j] = (tr.y[j] + static_cast<double>(tr.k[j])) / params.sigma2;
  }
  NppInstance instance{tr.a, params.kappa_target};
  return {std::move(instance), std::move(tr)};
}

std::string to_string(SnapStatus status) {
  return status == SnapStatus::kSnapped ? "snapped" : "exact_only";
}

NppExtraction extract_short_vector_npp(const NppTranscript& tr, std::span<const int> x) {
  const std::size_t n = tr.u.rows();
  const std::size_t m = tr.m();
  if (x.size() != m) throw std::invalid_argument("extract_short_vector_npp: x has the wrong length");
  for (int v : x) {
    if (v != 1 && v != -1) throw std::invalid_argument("extract_short_vector_npp: x must be in {-1, +1}^m");
  }
  const CrtSystem& crt = tr.crt;
  NppExtraction out;
  out.sign = x[0];

  const Vector w = tr.w();
  double wx = 0.0;
  double fx = 0.0;
  double ax = 0.0;
  BigInt gx = 0;
  for (std::size_t j = 0; j < m; ++j) {
    wx += w[j] * x[j];
    fx += tr.f[j] * x[j];
    ax += tr.a[j] * x[j];
    gx += tr.grid[j] * x[j];
  }
  out.achieved = std::abs(ax);
  out.e_prime = -wx;
  out.e_double_prime = fx + out.e_prime;
  out.grid_residue = mod_floor(-gx, crt.q);

  if (grid_resolvable(crt.q, m)) {
    const double grid_point = to_double(Rational(out.grid_residue, crt.q));
    out.snap_distance = std::abs(balanced_mod1(out.e_double_prime - grid_point));
    if (out.snap_distance > 1.0 / (4.0 * to_double(crt.q))) {
      throw std::runtime_error("extract_short_vector_npp: e'' is " + std::to_string(out.snap_distance) +
                               " away from the 1/q grid; transcript is corrupt");
    }
    out.snap = SnapStatus::kSnapped;
  } else {
    out.snap = SnapStatus::kExactOnly;
  }

  const std::vector<std::int64_t> residues = crt.inverse_numerators(out.grid_residue);
  Vector h(n);
  out.phi_inverse.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = static_cast<std::int64_t>(crt.p[i]);
    const std::int64_t a = 2 * residues[i] > p ? residues[i] - p : residues[i];
    out.phi_inverse.emplace_back(BigInt(a), BigInt(p));
    h[i] = static_cast<double>(a) / static_cast<double>(p);
  }
  out.phi_inverse_l1 = norm1(h);
  out.wraparound = out.phi_inverse_l1 > 1.0 / 16.0;
  out.within_sufficient = std::abs(out.e_double_prime) <= 2.0 * static_cast<double>(m) / to_double(crt.q);
  out.rounding_slack = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(crt.min_prime());
  out.slack_budget_ok = out.rounding_slack + out.phi_inverse_l1 <= 1.0 / 8.0;

  // floor_p(A) x + phi^{-1}(e'') is an integer vector, exactly.
  Vector dx(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = static_cast<std::int64_t>(crt.p[i]);
    std::int64_t num = to_int64(numerator(out.phi_inverse[i]));
    for (std::size_t j = 0; j < m; ++j) {
      num += tr.a_floor(i, j) * x[j];
      dx[i] += (tr.a_mod(i, j) - static_cast<double>(tr.a_floor(i, j)) / static_cast<double>(p)) * x[j];
    }
    const std::int64_t r = ((num % p) + p) % p;
    out.integrality_residual =
        std::max(out.integrality_residual, static_cast<double>(std::min(r, p - r)) / static_cast<double>(p));
  }

  const Matrix& s_mat = tr.inst.pair.s().matrix();
  const Vector ux = multiply(tr.u, x);
  const Vector sdx = multiply(s_mat, dx);
  const Vector sh = multiply(s_mat, h);
  out.s.resize(n);
  Vector diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.s[i] = out.sign * (ux[i] - sdx[i] + sh[i]);
    diff[i] = out.s[i] - tr.inst.t[i];
  }
  out.dist = norm2(diff);
  out.chain_bound = 4.0 * tr.params.sigma1 * static_cast<double>(m) +
                    max_column_norm(s_mat) * (out.rounding_slack + out.phi_inverse_l1);
  out.chain_ok = out.dist <= out.chain_bound;
  return out;
}

ReductionResult run_npp_reduction(const PlantedIncGDDInstance& inst, const NppParams& params,
                                  const Solver& solver, std::size_t max_attempts, Rng& rng) {
  if (max_attempts == 0) throw std::invalid_argument("run_npp_reduction: max_attempts must be >= 1");
  if (solver.alphabet().kind() != Alphabet::Kind::kPmOne) {
    throw std::invalid_argument("run_npp_reduction: the partition pipeline needs a pm_one solver");
  }
  const bool gate = params.regime == Regime::kPaperParams;
  ReductionResult result;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng arng = rng.fork("attempt", attempt);
    auto [instance, tr] = build_npp_instance(inst, params, arng);
    Matrix row(1, instance.a.size());
    row.data() = instance.a;
    Rng srng = arng.fork("solver");
    const SolverOutput out = solver.solve(row, instance.kappa_target, srng);

    AttemptRecord rec;
    rec.attempt = attempt;
    rec.kappa_target = instance.kappa_target;
    result.attempts = attempt + 1;
    if (out.x.size() != params.m || !Alphabet::pm_one().admits(out.x)) {
      rec.failure = "invalid_solution";
      result.log.push_back(rec);
      continue;
    }
    rec.solver_value = discrepancy(row, out.x);
    rec.kappa_ok = rec.solver_value <= instance.kappa_target;
    if (gate && !rec.kappa_ok) {
      rec.failure = "kappa";
      result.log.push_back(rec);
      continue;
    }
    const NppExtraction ext = extract_short_vector_npp(tr, out.x);
    const IncGDDVerdict verdict = verify_incgdd_solution(inst, ext.s);
    rec.extracted = true;
    rec.member = verdict.member;
    rec.dist = verdict.dist;
    rec.bound = verdict.bound;
    rec.valid = verdict.valid;
    rec.error_budget_ok = ext.slack_budget_ok;
    rec.wraparound = ext.wraparound;
    if (!verdict.valid) {
      rec.failure = !verdict.member ? "membership" : (ext.wraparound ? "wraparound" : "distance");
      result.log.push_back(rec);
      continue;
    }
    result.log.push_back(rec);
    result.s = ext.s;
    result.verified = true;
    break;
  }
  return result;
}

}  // namespace latred
