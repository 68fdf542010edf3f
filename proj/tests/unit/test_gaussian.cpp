#include "latred/gaussian.hpp"
#include "latred/lemma_checks.hpp"

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "gtest/gtest.h"

namespace latred {
namespace {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

TEST(SmoothingSigma, AlgebraicInversionAtOneOverPi) {
  // 2(1 + 1/eps) = e^2  =>  ln(...) = 2  =>  sigma = sqrt(2 / (2 pi^2)) = 1/pi
  const double e2 = std::exp(2.0);
  const double eps = 1.0 / (e2 / 2.0 - 1.0);
  EXPECT_NEAR(smoothing_sigma(1, eps), 1.0 / std::numbers::pi, 1e-14);
}

TEST(SmoothingSigma, SixteenAgainstHighPrecision) {
  const Dec50 ln16 = log(Dec50(16));
  const Dec50 eps = exp(-ln16 * ln16);
  const Dec50 pi = boost::math::constants::pi<Dec50>();
  const Dec50 oracle = sqrt(log(Dec50(32) * (1 + 1 / eps)) / (2 * pi * pi));
  const double got = smoothing_sigma(16, smoothing_eps_profile(16.0));
  EXPECT_NEAR(got, oracle.convert_to<double>(), 1e-12);
  EXPECT_NEAR(got, 0.7517, 1e-4);
  EXPECT_NEAR(smoothing_eps_profile(16.0), eps.convert_to<double>(), 1e-18);
}

TEST(SmoothingSigma, DomainErrors) {
  EXPECT_THROW(smoothing_sigma(0, 0.1), std::invalid_argument);
  EXPECT_THROW(smoothing_sigma(2, 0.5), std::invalid_argument);
  EXPECT_THROW(smoothing_sigma(2, 0.0), std::invalid_argument);
}

TEST(SampleNormalVec, ZeroWidthReturnsMean) {
  Rng rng(1);
  const Vector mu{1.5, -2.0, 3.25};
  const Vector v = sample_normal_vec(mu, 1e-12, rng);
  for (std::size_t i = 0; i < mu.size(); ++i) EXPECT_NEAR(v[i], mu[i], 1e-9);
}

TEST(SampleNormalVec, StandardMoments) {
  Rng rng(2);
  const Vector mu(1, 0.0);
  double sum = 0.0;
  double sq = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double x = sample_normal_vec(mu, 1.0, rng)[0];
    sum += x;
    sq += x * x;
  }
  const double mean = sum / kDraws;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(sq / kDraws - mean * mean, 1.0, 0.05);
}

TEST(SampleNormalVec, ShiftedMean) {
  Rng rng(3);
  const Vector mu(4, 5.0);
  Vector sum(4, 0.0);
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const Vector v = sample_normal_vec(mu, 2.0, rng);
    for (std::size_t k = 0; k < 4; ++k) sum[k] += v[k];
  }
  for (double s : sum) EXPECT_NEAR(s / kDraws, 5.0, 0.05);
}

TEST(DiscreteGaussian, ZeroShiftGivesIntegers) {
  Rng rng(4);
  const auto spec = DiscreteGaussianSpec::make(Vector(3, 0.0), 2.5);
  for (int i = 0; i < 200; ++i) {
    for (double v : sample_discrete_gaussian_coset(spec, rng)) EXPECT_EQ(v, std::round(v));
  }
}

TEST(DiscreteGaussian, SupportIsTheShiftedCoset) {
  Rng rng(5);
  const auto spec = DiscreteGaussianSpec::make(Vector{0.25, 0.75}, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Vector w = sample_discrete_gaussian_coset(spec, rng);
    EXPECT_NEAR(w[0] - std::floor(w[0]), 0.25, 1e-12);
    EXPECT_NEAR(w[1] - std::floor(w[1]), 0.75, 1e-12);
  }
}

TEST(DiscreteGaussian, TableMatchesDirectFormula) {
  const double shift = 0.3;
  const double s = 1.7;
  const DiscreteGaussian1D dg(shift, s, 20);
  double z = 0.0;
  for (int k = -20; k <= 20; ++k) z += std::exp(-std::numbers::pi * (shift + k) * (shift + k) / (s * s));
  double total = 0.0;
  for (int k = -20; k <= 20; ++k) {
    const double want = std::exp(-std::numbers::pi * (shift + k) * (shift + k) / (s * s)) / z;
    EXPECT_NEAR(dg.probability(k), want, 1e-15);
    total += dg.probability(k);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(dg.probability(21), 0.0);
}

TEST(DiscreteGaussian, EmpiricalTvIsSmall) {
  Rng rng(6);
  const StatReport rep = check_discrete_gaussian_tv(0.4, 2.0, 100000, rng);
  EXPECT_TRUE(rep.pass) << rep.statistic;
}

TEST(SpectralNorm, ClosedForms) {
  EXPECT_NEAR(spectral_norm(Matrix::identity(3)), 1.0, 1e-12);
  EXPECT_NEAR(spectral_norm(Matrix{{3, 0}, {0, 1}}), 3.0, 1e-12);
  EXPECT_NEAR(spectral_norm(Matrix{{1, 1}, {1, 1}}), 2.0, 1e-12);
}

// Power iteration on A^T A as an independent oracle.
double power_iteration(const Matrix& a) {
  Vector v(a.cols(), 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const Vector av = multiply(a, v);
    Vector atav(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) atav[j] += a(i, j) * av[i];
    }
    const double nrm = norm2(atav);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = atav[j] / nrm;
    lambda = nrm;
  }
  return std::sqrt(lambda);
}

TEST(SpectralNorm, MatchesPowerIteration) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a(3 + trial % 3, 8 + trial);
    for (double& x : a.data()) x = rng.normal();
    EXPECT_NEAR(spectral_norm(a), power_iteration(a), 1e-8);
  }
}

TEST(Gaussianization, SmallDimensions) {
  Rng rng(8);
  for (std::size_t n : {1u, 4u}) {
    const StatReport rep = check_gaussianization(n, kCheckEps, 40000, rng);
    EXPECT_LE(rep.statistic, 0.015) << "n = " << n;
  }
}

TEST(Tails, FewTrialsStillWithinBound) {
  Rng rng(9);
  const TailCheckReport rep = check_gaussian_tails(4, 64, 500, rng);
  EXPECT_TRUE(rep.pass());
  EXPECT_DOUBLE_EQ(rep.norm_bound, std::exp(-1.0));
  EXPECT_THROW(check_gaussian_tails(4, 32, 10, rng), std::invalid_argument);
}

}  // namespace
}  // namespace latred
