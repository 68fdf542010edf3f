#include "latred/statistics.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"
#include "latred/rng.hpp"

namespace latred {
namespace {

TEST(KsStatistic, MidpointGrid) {
  for (std::size_t n : {2u, 10u, 1000u}) {
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    EXPECT_NEAR(ks_statistic(grid, ReferenceCdf::kUniform01), 0.5 / static_cast<double>(n), 1e-15);
  }
}

TEST(KsStatistic, PointMass) {
  const std::vector<double> same(50, 0.5);
  EXPECT_DOUBLE_EQ(ks_statistic(same, ReferenceCdf::kUniform01), 0.5);
}

TEST(KsStatistic, OrderDoesNotMatter) {
  const std::vector<double> a{0.9, 0.1, 0.5, 0.3};
  const std::vector<double> b{0.1, 0.3, 0.5, 0.9};
  EXPECT_EQ(ks_statistic(a, ReferenceCdf::kStdNormal), ks_statistic(b, ReferenceCdf::kStdNormal));
}

TEST(KsStatistic, GenuineUniformDraws) {
  Rng rng(12);
  std::vector<double> xs(100000);
  for (double& x : xs) x = rng.uniform01();
  EXPECT_LE(ks_statistic(xs, ReferenceCdf::kUniform01), 0.01);
}

TEST(KsStatistic, GenuineNormalDraws) {
  Rng rng(13);
  std::vector<double> xs(100000);
  for (double& x : xs) x = rng.normal();
  EXPECT_LE(ks_statistic(xs, ReferenceCdf::kStdNormal), 0.01);
  // and they are clearly not uniform
  EXPECT_GT(ks_statistic(xs, ReferenceCdf::kUniform01), 0.3);
}

TEST(KsStatistic, NeedsTwoSamples) {
  const std::vector<double> one{0.5};
  EXPECT_THROW(ks_statistic(one, ReferenceCdf::kUniform01), std::invalid_argument);
  EXPECT_THROW(ks_statistic(std::vector<double>{}, ReferenceCdf::kUniform01), std::invalid_argument);
}

TEST(KolmogorovSurvival, TabulatedCriticalValues) {
  // sqrt(N) D_N critical values: 1.358 at 5%, 1.628 at 1%
  EXPECT_NEAR(kolmogorov_survival(1.358), 0.05, 5e-4);
  EXPECT_NEAR(kolmogorov_survival(1.628), 0.01, 2e-4);
  EXPECT_NEAR(kolmogorov_survival(0.0), 1.0, 1e-12);
}

TEST(ReferenceCdf, KnownPoints) {
  EXPECT_DOUBLE_EQ(reference_cdf(ReferenceCdf::kUniform01, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(reference_cdf(ReferenceCdf::kUniform01, 0.25), 0.25);
  EXPECT_DOUBLE_EQ(reference_cdf(ReferenceCdf::kUniform01, 2.0), 1.0);
  EXPECT_NEAR(reference_cdf(ReferenceCdf::kStdNormal, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(reference_cdf(ReferenceCdf::kStdNormal, 1.959963984540054), 0.975, 1e-12);
}

TEST(ChiSquared, TwoDegreesOfFreedomClosedForm) {
  // survival of chi^2_2 is exp(-x / 2)
  for (double x : {0.5, 2.0, 7.3, 15.0}) {
    EXPECT_NEAR(chi_squared_pvalue(x, 2.0), std::exp(-x / 2.0), 1e-12);
  }
}

TEST(ChiSquared, StatisticByHand) {
  const std::vector<std::uint64_t> obs{10, 20, 30};
  const std::vector<double> expd{20, 20, 20};
  EXPECT_DOUBLE_EQ(chi_squared_statistic(obs, expd), (100.0 + 0.0 + 100.0) / 20.0);
}

TEST(TotalVariation, HalfL1) {
  const std::vector<double> p{0.5, 0.5, 0.0};
  const std::vector<double> q{0.25, 0.25, 0.5};
  EXPECT_DOUBLE_EQ(total_variation(p, q), 0.5);
  EXPECT_DOUBLE_EQ(total_variation(p, p), 0.0);
}

}  // namespace
}  // namespace latred
