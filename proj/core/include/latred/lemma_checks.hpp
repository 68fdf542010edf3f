#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latred/lattice.hpp"
#include "latred/rng.hpp"

namespace latred {

/// One statistical or exhaustive check. `pass` compares `statistic` with
/// `threshold` in the direction the check requires (most are "<=", the
/// power checks are ">" and the chi-squared check compares a p-value with
/// ">=").
struct StatReport {
  std::string test;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t samples = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// KS threshold for 10^5 samples.
inline constexpr double kKsThreshold = 0.01;
/// Distance the power checks must exceed.
inline constexpr double kKsPowerThreshold = 0.05;
/// eps for the checks at fixed n, where exp(-ln^2 n) is not below 1/2.
inline constexpr double kCheckEps = 1e-3;

/// TV distance between the empirical law of D_{Z + shift, s} and its exact
/// truncated table.
StatReport check_discrete_gaussian_tv(double shift, double s, std::size_t samples, Rng& rng);

/// v ~ U[0,1)^n, w ~ D_{Z^n + v, sigma sqrt(2 pi)} with sigma =
/// smoothing_sigma(n, eps); pooled coordinates of w / sigma against N(0, 1).
StatReport check_gaussianization(std::size_t n, double eps, std::size_t samples, Rng& rng);

/// Coordinates of frac(B^{-1} x), x ~ N(mu, sigma^2 I), against U[0, 1), where
/// sigma = sigma_factor * lambda_n. With sigma_factor <= 0 the smoothing
/// bound smoothing_sigma(n, eps) is used. `power` flips the pass direction to
/// statistic > kKsPowerThreshold.
StatReport check_smoothing_uniform(const PlantedIncGDDInstance& inst, double sigma_factor,
                                   double eps, std::size_t samples, Rng& rng, bool power = false);

/// Two reports: spectral tail and chi-squared norm tail.
std::vector<StatReport> check_tails(std::size_t n, std::size_t m, std::size_t trials, Rng& rng);

/// Chi-squared goodness of fit of sample_coset_uniform over all |det M|
/// cosets. statistic is the p-value; pass iff p >= 0.01.
StatReport check_coset_uniformity(const SublatticePair& pair, std::size_t draws, Rng& rng);

/// Pooled entries of A_tilde (against U[0,1)) and A (against N(0,1)) from
/// repeated perceptron builds with sigma1 = sigma1_factor * lambda_n. With
/// `power` only the uniformity report is produced, and it passes when the
/// distance exceeds kKsPowerThreshold.
std::vector<StatReport> check_sbp_distribution(const PlantedIncGDDInstance& inst, std::uint64_t m,
                                               double sigma1_factor, std::size_t samples, Rng& rng,
                                               bool power = false);

/// Same for the partition pipeline: pooled y against U[0,1) and a against
/// N(0,1). With `power` the single report is for A = S^{-1}(V + U) mod Z^n
/// against U[0,1): the CRT compression makes y itself nearly uniform even for
/// tiny sigma1, so y carries no power.
std::vector<StatReport> check_npp_distribution(const PlantedIncGDDInstance& inst, std::uint64_t m,
                                               double sigma1_factor, std::size_t samples, Rng& rng,
                                               bool power = false);

/// Bijectivity, roundtrip and homomorphism of the normalized CRT map over
/// every increasing tuple of primes with product <= max_q. statistic is the
/// number of failures; samples counts the tuples checked.
StatReport check_crt_exhaustive(std::uint64_t max_q);

/// ||(A - floor_p(A)) x||_1 <= (n / min p) ||x||_1 for random (n, m, A, x)
/// with primes from select_primes, together with n m / min p <= 1/16.
/// statistic is the number of violations.
StatReport check_rounding_bound(std::size_t cases, Rng& rng);

/// Karmarkar-Karp against brute force on random a with m <= max_m:
/// KK value >= optimum and |a^T x_KK| reproduces the KK value to 1e-9.
/// statistic is the number of violations.
StatReport check_kk_against_optimum(std::size_t cases, std::size_t max_m, Rng& rng);

/// Named suites for the `stats` verb: discrete_gaussian, gaussianization,
/// smoothing, tails, coset, sbp_distribution, npp_distribution, crt,
/// rounding, kk, or all.
std::vector<StatReport> run_stats_suite(const std::string& suite, std::uint64_t seed);

std::vector<std::string> stats_suite_names();

}  // namespace latred
