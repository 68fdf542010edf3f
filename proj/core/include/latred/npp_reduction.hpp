#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latred/crt.hpp"
#include "latred/lattice.hpp"
#include "latred/reduction.hpp"
#include "latred/sbp_reduction.hpp"
#include "latred/solvers.hpp"

namespace latred {

struct NppParams {
  double eps = 1.0;
  std::uint64_t m = 0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double gamma = 0.0;
  double kappa_target = 0.0;
  std::optional<std::uint64_t> override_m;
  Regime regime = Regime::kPaperParams;
  /// ceil(2^{10 n^{1/(1+eps)}}); nullopt when it exceeds 2^63.
  std::optional<std::uint64_t> formula_m;
  bool gamma_condition_ok = false;
};

/// ceil(2^{10 n^{1/(1+eps)}}) in 50-digit binary floating point. An exponent
/// within 1e-12 of an integer is snapped to it first, so n = 1 gives 1024.
std::optional<std::uint64_t> npp_formula_m(std::size_t n, double eps);

/// 2^{-(log2 m)^{2+eps}} sqrt(m).
double npp_kappa_target(std::uint64_t m, double eps);

/// 4 m ln m.
double npp_gamma(std::uint64_t m);

/// sigma2 = ln m, sigma1 = r/(4m), gamma = 4 m ln m. Throws
/// std::invalid_argument when eps <= 0, m < max(n, 2), or the formula m
/// exceeds m_budget without an override.
NppParams derive_npp_params(const PlantedIncGDDInstance& inst, double eps,
                            std::optional<std::uint64_t> override_m = std::nullopt,
                            std::uint64_t m_budget = kDefaultMBudget);

struct NppInstance {
  Vector a;
  double kappa_target = 0.0;
};

struct NppTranscript {
  PlantedIncGDDInstance inst;
  NppParams params;
  CrtSystem crt;
  Matrix u;
  Matrix v;
  SmallIntMatrix v_coeffs;
  Matrix a_mod;                 // A = S^{-1}(V + U) mod Z^n
  SmallIntMatrix a_floor;       // numerators: floor_p(A)(i, j) = a_floor(i, j) / p_i
  std::vector<BigInt> grid;     // g_j with phi(column j of floor_p(A)) = g_j / q
  Vector f;                     // f ~ U[0, 1/q)^m
  Vector y;                     // frac(g / q + f)
  IntVector k;                  // w = y + k
  Vector a;                     // w / sigma2

  std::size_t m() const noexcept { return u.cols(); }
  Vector w() const;
};

/// Streams: "U", "V", "f", "discrete".
std::pair<NppInstance, NppTranscript> build_npp_instance(const PlantedIncGDDInstance& inst,
                                                         const NppParams& params, Rng& rng);

/// How e'' was placed on the 1/q grid.
///   snapped:    the float value lies within 1/(4q) of the exact grid point
///   exact_only: 1/q is below float resolution at this m; only the exact grid
///               residue is used
enum class SnapStatus { kSnapped, kExactOnly };
std::string to_string(SnapStatus status);

struct NppExtraction {
  Vector s;
  int sign = 1;
  double achieved = 0.0;        // |a^T x|
  double e_prime = 0.0;         // -w^T x
  double e_double_prime = 0.0;  // f^T x + e'
  BigInt grid_residue;          // k with e'' = k / q mod 1
  SnapStatus snap = SnapStatus::kSnapped;
  double snap_distance = 0.0;
  std::vector<Rational> phi_inverse;  // balanced residues in (-1/2, 1/2]
  double phi_inverse_l1 = 0.0;
  bool wraparound = false;           // ||phi^{-1}(e'')||_1 > 1/16
  bool within_sufficient = false;    // |e''| <= 2m/q
  double rounding_slack = 0.0;       // n m / min p
  bool slack_budget_ok = false;      // rounding_slack + ||phi^{-1}(e'')||_1 <= 1/8
  double integrality_residual = 0.0; // floor_p(A) x + phi^{-1}(e'') vs Z^n
  double chain_bound = 0.0;          // 4 sigma1 m + ||S|| (slack + ||phi^{-1}||_1)
  double dist = 0.0;
  bool chain_ok = false;
};

/// s = x_1 (U x - S (A - floor_p(A)) x + S phi^{-1}(e'')). The grid residue
/// of e'' is computed exactly from the stored numerators; the float value is
/// checked against it and a mismatch throws std::runtime_error (corrupt
/// transcript). Throws std::invalid_argument unless x is in {-1, +1}^m.
NppExtraction extract_short_vector_npp(const NppTranscript& transcript, std::span<const int> x);

/// As run_sbp_reduction. The kappa gate is enforced only when m comes from the formula;
/// in the override regime the target is below anything a solver can reach at
/// desk scale, so kappa_ok is reported but does not stop extraction.
ReductionResult run_npp_reduction(const PlantedIncGDDInstance& inst, const NppParams& params,
                                  const Solver& solver, std::size_t max_attempts, Rng& rng);

}  // namespace latred
