#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "latred/lattice.hpp"
#include "latred/reduction.hpp"
#include "latred/solvers.hpp"

namespace latred {

/// Largest m derive_sbp_params accepts without an override.
inline constexpr std::uint64_t kDefaultMBudget = std::uint64_t{1} << 20;

struct SbpParams {
  double eps = 1.0;
  std::uint64_t m = 0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double gamma = 0.0;
  double kappa_target = 0.0;
  std::optional<std::uint64_t> override_m;
  Regime regime = Regime::kPaperParams;
  /// ceil((8 ln n n^{3/2+eps})^{1/eps}); nullopt when it exceeds 2^63.
  std::optional<std::uint64_t> formula_m;
  /// r > gamma lambda_n for the instance (true when lambda_n is unknown).
  bool gamma_condition_ok = false;
};

/// ceil((8 ln n n^{3/2+eps})^{1/eps}), evaluated in 50-digit binary floating
/// point. nullopt when the value does not fit below 2^63. Requires n >= 2.
std::optional<std::uint64_t> sbp_formula_m(std::size_t n, double eps);

/// (n/m)^{1/2+eps} sqrt(m).
double sbp_kappa_target(std::size_t n, std::uint64_t m, double eps);

/// 4 m ln n.
double sbp_gamma(std::size_t n, std::uint64_t m);

/// Parameter block for the perceptron pipeline. sigma2 = ln n, sigma1 = r/(4m),
/// gamma = 4 m ln n. Throws std::invalid_argument when n < 2, eps <= 0, m < n,
/// or the formula m exceeds m_budget without an override.
SbpParams derive_sbp_params(const PlantedIncGDDInstance& inst, double eps,
                            std::optional<std::uint64_t> override_m = std::nullopt,
                            std::uint64_t m_budget = kDefaultMBudget);

struct SbpInstance {
  Matrix a;
  double kappa_target = 0.0;
};

struct SbpTranscript {
  PlantedIncGDDInstance inst;
  SbpParams params;
  TargetEmbedding embedding;
  Matrix u;
  Matrix v;
  SmallIntMatrix v_coeffs;  // V = B * v_coeffs
  Matrix a_tilde;           // S^{-1}(V + U) mod Z^n
  SmallIntMatrix k;         // W = a_tilde + k
  Matrix a;                 // W / sigma2

  std::size_t m() const noexcept { return u.cols(); }
  /// Exact W = a_tilde + k as doubles.
  Matrix w() const;
};

/// Samples U (embedding column mean t / scale), V (uniform cosets),
/// A_tilde = S^{-1}(V + U) mod Z^n, W ~ D_{Z^n + a_tilde_j, sigma2 sqrt(2 pi)}
/// per column and A = W / sigma2. Streams: "U", "V", "discrete".
std::pair<SbpInstance, SbpTranscript> build_sbp_instance(const PlantedIncGDDInstance& inst,
                                                         const SbpParams& params, Rng& rng,
                                                         const TargetEmbedding& embedding = {});

struct SbpExtraction {
  Vector s;
  Vector e_prime;  // -W x
  int sign = 1;
  bool guess_matched = true;
  double achieved = 0.0;  // ||A x||_inf
  double e_prime_inf = 0.0;
  bool error_budget_ok = false;  // ||e'||_inf <= 1/(8n)
  double integrality_residual = 0.0;
  // ||s - t|| <= ||u'|| + sigma_max(U_{-j}) ||x_{-j}||_2 + n ||S|| ||e'||_inf
  bool chain_applicable = false;
  double chain_target_term = 0.0;
  double chain_noise_term = 0.0;
  double chain_error_term = 0.0;
  double chain_bound = 0.0;
  double dist = 0.0;
  bool chain_ok = false;
};

/// s = sign (U x + S e') with e' = -W x and sign = sign(x_j) sign(scale) at the
/// embedding column. Throws std::invalid_argument for a size mismatch or an
/// all-zero x.
SbpExtraction extract_short_vector(const SbpTranscript& transcript, std::span<const int> x);

/// Repeats build -> solve -> kappa check -> extract -> verify with fresh
/// randomness until verification succeeds or max_attempts is reached. For
/// alphabets other than pm_one the embedding column (and scale) is guessed
/// uniformly each attempt. Attempt i uses rng.fork("attempt", i).
ReductionResult run_sbp_reduction(const PlantedIncGDDInstance& inst, const SbpParams& params,
                                  const Solver& solver, std::size_t max_attempts, Rng& rng);

}  // namespace latred
