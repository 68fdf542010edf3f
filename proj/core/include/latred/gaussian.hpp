#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latred/numeric_types.hpp"
#include "latred/rng.hpp"

namespace latred {

/// sqrt(ln(2n(1 + 1/eps)) / (2 pi^2)). A continuous Gaussian of this width
/// (times lambda_n) reduced modulo any basis is eps/2-close to uniform, and a
/// uniformly shifted discrete Gaussian over Z^n of this width is 4 eps-close
/// to the continuous one. Requires n >= 1 and 0 < eps < 1/2.
double smoothing_sigma(std::size_t n, double eps);

/// exp(-ln^2 x): the eps schedule used by both reductions (x = n for the
/// perceptron pipeline, x = m for number partitioning).
double smoothing_eps_profile(double x);

struct SmoothingParams {
  std::size_t n = 1;
  double eps = 0.25;
  double sigma_threshold = 0.0;

  static SmoothingParams make(std::size_t n, double eps);
};

/// i.i.d. N(mu_i, sigma^2) coordinates.
Vector sample_normal_vec(std::span<const double> mu, double sigma, Rng& rng);

/// D_{Z^n + shift, s} restricted to offsets k in [-tail_cut, tail_cut].
struct DiscreteGaussianSpec {
  Vector shift;
  double s = 1.0;
  std::int64_t tail_cut = 0;

  /// tail_cut = ceil(8 s) + 1, so the discarded mass per coordinate is far
  /// below 2^-64 for any shift in [0, 1).
  static DiscreteGaussianSpec make(Vector shift, double s);
  void validate() const;
};

/// Exact truncated table for one coordinate: P[k] proportional to
/// exp(-pi (shift + k)^2 / s^2), sampled by CDF inversion.
class DiscreteGaussian1D {
 public:
  DiscreteGaussian1D(double shift, double s, std::int64_t tail_cut);

  std::int64_t sample(Rng& rng) const;
  /// Normalized probability of offset k (0 outside the table).
  double probability(std::int64_t k) const;
  std::int64_t tail_cut() const noexcept { return tail_cut_; }
  double shift() const noexcept { return shift_; }

 private:
  double shift_;
  std::int64_t tail_cut_;
  std::vector<double> mass_;
  std::vector<double> cdf_;
};

/// Integer offset k for one coordinate of D_{Z + shift, s}; the sample is
/// shift + k.
std::int64_t sample_discrete_gaussian_offset(double shift, double s, Rng& rng);

/// w in Z^n + shift, one independent table per coordinate.
Vector sample_discrete_gaussian_coset(const DiscreteGaussianSpec& spec, Rng& rng);

/// Largest singular value. Computed from the eigenvalues of the smaller Gram
/// matrix with cyclic Jacobi rotations; throws std::runtime_error if the
/// sweeps do not converge.
double spectral_norm(const Matrix& a);

struct TailCheckReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  // sigma_max(A) > 3 sqrt(m) / 2 for A ~ N(0,1)^{n x m}
  std::size_t sigma_exceed = 0;
  double sigma_rate = 0.0;
  double sigma_bound = 0.0;
  double sigma_allowed = 0.0;
  bool sigma_pass = false;
  // ||v||_2 >= sqrt(5/2) sqrt(n) for v ~ N(0, I_n)
  std::size_t norm_exceed = 0;
  double norm_rate = 0.0;
  double norm_bound = 0.0;
  double norm_allowed = 0.0;
  bool norm_pass = false;

  bool pass() const noexcept { return sigma_pass && norm_pass; }
};

/// Monte-Carlo failure rates of the spectral and chi-squared tail bounds.
/// Each rate passes when it is at most bound + 3 binomial standard
/// deviations. Requires m >= 16 n.
TailCheckReport check_gaussian_tails(std::size_t n, std::size_t m, std::size_t trials, Rng& rng);

}  // namespace latred
