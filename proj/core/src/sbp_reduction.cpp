#include "latred/sbp_reduction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "latred/gaussian.hpp"

namespace latred {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

void check_dimension(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("perceptron pipeline requires n >= 2 (sigma2 = ln n vanishes at n = 1)");
  }
}

}  // namespace

std::optional<std::uint64_t> sbp_formula_m(std::size_t n, double eps) {
  check_dimension(n);
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Float50 fn(static_cast<unsigned long long>(n));
  const Float50 fe(eps);
  const Float50 inner = 8 * log(fn) * pow(fn, Float50(1.5) + fe);
  const Float50 value = ceil(pow(inner, 1 / fe));
  if (value >= Float50(9223372036854775808.0)) return std::nullopt;
  return value.convert_to<std::uint64_t>();
}

double sbp_kappa_target(std::size_t n, std::uint64_t m, double eps) {
  const double ratio = static_cast<double>(n) / static_cast<double>(m);
  return std::pow(ratio, 0.5 + eps) * std::sqrt(static_cast<double>(m));
}

double sbp_gamma(std::size_t n, std::uint64_t m) {
  return 4.0 * static_cast<double>(m) * std::log(static_cast<double>(n));
}

SbpParams derive_sbp_params(const PlantedIncGDDInstance& inst, double eps,
                            std::optional<std::uint64_t> override_m, std::uint64_t m_budget) {
  const std::size_t n = inst.dimension();
  check_dimension(n);
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  SbpParams p;
  p.eps = eps;
  p.formula_m = sbp_formula_m(n, eps);
  if (override_m) {
    p.m = *override_m;
    p.override_m = override_m;
    p.regime = Regime::kOverride;
  } else {
    if (!p.formula_m || *p.formula_m > m_budget) {
      throw std::invalid_argument(
          "formula m = " + (p.formula_m ? std::to_string(*p.formula_m) : std::string("> 2^63")) +
          " exceeds the budget of " + std::to_string(m_budget) + " columns; use override_m");
    }
    p.m = *p.formula_m;
    p.regime = Regime::kPaperParams;
  }
  if (p.m < n) throw std::invalid_argument("m must be >= n");
  p.sigma2 = std::log(static_cast<double>(n));
  p.sigma1 = inst.r / (4.0 * static_cast<double>(p.m));
  p.gamma = sbp_gamma(n, p.m);
  p.kappa_target = sbp_kappa_target(n, p.m, eps);
  p.gamma_condition_ok = !inst.lambda_known() || inst.r > p.gamma * inst.lambda_n;
  return p;
}

Matrix SbpTranscript::w() const {
  Matrix out = a_tilde;
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] += static_cast<double>(k.data()[i]);
  }
  return out;
}

std::pair<SbpInstance, SbpTranscript> build_sbp_instance(const PlantedIncGDDInstance& inst,
                                                         const SbpParams& params, Rng& rng,
                                                         const TargetEmbedding& embedding) {
  const std::size_t n = inst.dimension();
  const std::size_t m = params.m;
  if (m == 0 || !(params.sigma1 > 0.0) || !(params.sigma2 > 0.0)) {
    throw std::invalid_argument("build_sbp_instance: inconsistent parameters");
  }
  SbpTranscript tr{inst, params, embedding, {}, {}, {}, {}, {}, {}};
  Rng u_rng = rng.fork("U");
  Rng v_rng = rng.fork("V");
  Rng d_rng = rng.fork("discrete");
  tr.u = sample_target_columns(inst, m, params.sigma1, embedding, u_rng);
  CosetBatch cosets = sample_coset_columns(inst.pair, m, v_rng);
  tr.v = std::move(cosets.v);
  tr.v_coeffs = std::move(cosets.coeffs);
  tr.a_tilde = reduce_mod_sublattice(inst.pair, tr.v, tr.u);

  const double s = params.sigma2 * std::sqrt(2.0 * std::numbers::pi);
  const auto tail = static_cast<std::int64_t>(std::ceil(8.0 * s)) + 1;
  tr.k = SmallIntMatrix(n, m);
  tr.a = Matrix(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const DiscreteGaussian1D table(tr.a_tilde(i, j), s, tail);
      tr.k(i, j) = table.sample(d_rng);
      tr.a(i, j) = (tr.a_tilde(i, j) + static_cast<double>(tr.k(i, j))) / params.sigma2;
    }
  SbpInstance instance{tr.a, params.kappa_target};
  return {std::move(instance), std::move(tr)};
}

SbpExtraction extract_short_vector(const SbpTranscript& tr, std::span<const int> x) {
  const std::size_t n = tr.u.rows();
  const std::size_t m = tr.m();
  if (x.size() != m) throw std::invalid_argument("extract_short_vector: x has the wrong length");
  bool nonzero = false;
  for (int v : x) nonzero = nonzero || v != 0;
  if (!nonzero) throw std::invalid_argument("extract_short_vector: x is all-zero");

  SbpExtraction out;
  const std::size_t j = tr.embedding.column;
  const int xj = x[j];
  out.guess_matched = std::abs(xj) == std::abs(tr.embedding.scale);
  out.sign = (xj < 0) != (tr.embedding.scale < 0) ? -1 : 1;
  out.achieved = discrepancy(tr.a, x);

  const Matrix w = tr.w();
  out.e_prime = multiply(w, x);
  for (double& e : out.e_prime) e = -e;
  const Vector ux = multiply(tr.u, x);
  const Vector se = multiply(tr.inst.pair.s().matrix(), out.e_prime);
  out.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.s[i] = out.sign * (ux[i] + se[i]);

  out.e_prime_inf = norm_inf(out.e_prime);
  out.error_budget_ok = out.e_prime_inf <= 1.0 / (8.0 * static_cast<double>(n));
  out.integrality_residual = integrality_residual(tr.inst.pair, tr.v, tr.u, x, out.e_prime);

  Vector diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = out.s[i] - tr.inst.t[i];
  out.dist = norm2(diff);

  out.chain_applicable = out.guess_matched && m >= 2;
  if (out.chain_applicable) {
    Vector u_shift(n);
    for (std::size_t i = 0; i < n; ++i) {
      u_shift[i] = xj * (tr.u(i, j) - tr.inst.t[i] / tr.embedding.scale);
    }
    out.chain_target_term = norm2(u_shift);
    Matrix rest(n, m - 1);
    double x_rest_sq = 0.0;
    for (std::size_t c = 0, col = 0; c < m; ++c) {
      if (c == j) continue;
      for (std::size_t i = 0; i < n; ++i) rest(i, col) = tr.u(i, c);
      x_rest_sq += static_cast<double>(x[c]) * x[c];
      ++col;
    }
    out.chain_noise_term = spectral_norm(rest) * std::sqrt(x_rest_sq);
    out.chain_error_term = static_cast<double>(n) * max_column_norm(tr.inst.pair.s().matrix()) *
                           out.e_prime_inf;
    out.chain_bound = out.chain_target_term + out.chain_noise_term + out.chain_error_term;
    out.chain_ok = out.dist <= out.chain_bound * (1.0 + 1e-12) + 1e-12;
  }
  return out;
}

ReductionResult run_sbp_reduction(const PlantedIncGDDInstance& inst, const SbpParams& params,
                                  const Solver& solver, std::size_t max_attempts, Rng& rng) {
  if (max_attempts == 0) throw std::invalid_argument("run_sbp_reduction: max_attempts must be >= 1");
  const Alphabet alphabet = solver.alphabet();
  ReductionResult result;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng arng = rng.fork("attempt", attempt);
    const TargetEmbedding embedding = guess_embedding(alphabet, params.m, arng);
    auto [instance, tr] = build_sbp_instance(inst, params, arng, embedding);
    Rng srng = arng.fork("solver");
    const SolverOutput out = solver.solve(instance.a, instance.kappa_target, srng);

    AttemptRecord rec;
    rec.attempt = attempt;
    rec.kappa_target = instance.kappa_target;
    result.attempts = attempt + 1;
    if (out.x.size() != params.m || !alphabet.admits(out.x)) {
      rec.failure = "invalid_solution";
      result.log.push_back(rec);
      continue;
    }
    rec.solver_value = discrepancy(instance.a, out.x);
    rec.kappa_ok = rec.solver_value <= instance.kappa_target;
    if (!rec.kappa_ok) {
      rec.failure = "kappa";
      result.log.push_back(rec);
      continue;
    }
    const SbpExtraction ext = extract_short_vector(tr, out.x);
    const IncGDDVerdict verdict = verify_incgdd_solution(inst, ext.s);
    rec.extracted = true;
    rec.member = verdict.member;
    rec.dist = verdict.dist;
    rec.bound = verdict.bound;
    rec.valid = verdict.valid;
    rec.error_budget_ok = ext.error_budget_ok;
    rec.guess_matched = ext.guess_matched;
    if (!verdict.valid) {
      rec.failure = !verdict.member ? "membership" : (ext.guess_matched ? "distance" : "guess");
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
