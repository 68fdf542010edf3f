#include "latred/crt.hpp"
#include "latred/lemma_checks.hpp"

#include <vector>

#include "gtest/gtest.h"

namespace latred {
namespace {

std::vector<bool> sieve(std::uint64_t limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (std::uint64_t k = i * i; k <= limit; k += i) prime[k] = false;
  }
  return prime;
}

std::vector<std::uint64_t> sieve_select(std::size_t n, std::uint64_t m) {
  const std::uint64_t lo = 32 * n * m;
  const std::uint64_t hi = 320 * n * m;
  const auto prime = sieve(hi);
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = lo; v <= hi && out.size() < n; ++v) {
    if (prime[v]) out.push_back(v);
  }
  return out;
}

TEST(IsPrime, AgreesWithSieve) {
  const auto prime = sieve(100000);
  for (std::uint64_t v = 0; v <= 100000; ++v) ASSERT_EQ(is_prime_u64(v), prime[v]) << v;
}

TEST(IsPrime, LargeKnownValues) {
  EXPECT_TRUE(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime_u64(18446744073709551555ULL));
  EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
}

TEST(SelectPrimes, RejectsMBelowN) {
  EXPECT_THROW(select_primes(3, 2), std::invalid_argument);
  EXPECT_THROW(select_primes(0, 5), std::invalid_argument);
}

TEST(SelectPrimes, SmallCases) {
  EXPECT_EQ(select_primes(1, 1), (std::vector<std::uint64_t>{37}));
  EXPECT_EQ(select_primes(2, 4), (std::vector<std::uint64_t>{257, 263}));
}

TEST(SelectPrimes, MatchesSieveOnAGrid) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint64_t m : {1u, 2u, 5u, 12u, 16u, 64u}) {
      if (m < n) continue;
      EXPECT_EQ(select_primes(n, m), sieve_select(n, m)) << n << " " << m;
    }
  }
}

TEST(SelectPrimes, SelectionBoundAlwaysHolds) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::uint64_t m = n; m <= 64; ++m) {
      const auto p = select_primes(n, m);
      ASSERT_EQ(p.size(), n);
      // n m / min p <= 1/16 since min p >= 32 n m
      EXPECT_LE(16 * n * m, p.front());
      const CrtSystem crt = crt_build(p);
      EXPECT_TRUE(crt_modulus_bound_holds(crt, n, m));
    }
  }
}

TEST(CrtBuild, TwoThree) {
  const std::vector<std::uint64_t> p{2, 3};
  const CrtSystem crt = crt_build(p);
  EXPECT_EQ(crt.q, BigInt(6));
  // c_i = (q / p_i)^{-1} mod p_i: 3^{-1} mod 2 = 1, 2^{-1} mod 3 = 2
  EXPECT_EQ(crt.c[0], BigInt(1));
  EXPECT_EQ(crt.c[1], BigInt(2));
  const std::vector<Rational> y{Rational(1, 2), Rational(1, 3)};
  EXPECT_EQ(crt.forward(std::span<const Rational>(y)), Rational(1, 6));
  EXPECT_EQ(crt_inverse(Rational(1, 6), crt), y);
  const std::vector<Rational> zero{Rational(0), Rational(0)};
  EXPECT_EQ(crt.forward(std::span<const Rational>(zero)), Rational(0));
  EXPECT_EQ(crt_inverse(Rational(0), crt), zero);
}

TEST(CrtBuild, TwoThreeBijection) {
  const std::vector<std::uint64_t> p{2, 3};
  const CrtSystem crt = crt_build(p);
  std::vector<bool> hit(6, false);
  for (std::int64_t a0 = 0; a0 < 2; ++a0) {
    for (std::int64_t a1 = 0; a1 < 3; ++a1) {
      const std::vector<std::int64_t> a{a0, a1};
      const BigInt k = crt.forward(std::span<const std::int64_t>(a));
      ASSERT_GE(k, 0);
      ASSERT_LT(k, 6);
      EXPECT_FALSE(hit[static_cast<std::size_t>(k)]);
      hit[static_cast<std::size_t>(k)] = true;
      EXPECT_EQ(crt.inverse_numerators(k), a);
    }
  }
}

TEST(CrtBuild, ThreeFiveHomomorphismAllPairs) {
  const std::vector<std::uint64_t> p{3, 5};
  const CrtSystem crt = crt_build(p);
  ASSERT_EQ(crt.q, BigInt(15));
  int pairs = 0;
  for (std::int64_t a = 0; a < 15; ++a) {
    for (std::int64_t b = 0; b < 15; ++b) {
      const std::vector<Rational> y{Rational(a % 3, 3), Rational(a % 5, 5)};
      const std::vector<Rational> yp{Rational(b % 3, 3), Rational(b % 5, 5)};
      const std::vector<Rational> sum{frac_rational(y[0] + yp[0]), frac_rational(y[1] + yp[1])};
      const Rational lhs = crt.forward(std::span<const Rational>(sum));
      const Rational rhs = frac_rational(crt.forward(std::span<const Rational>(y)) +
                                         crt.forward(std::span<const Rational>(yp)));
      EXPECT_EQ(lhs, rhs);
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 225);
}

TEST(CrtBuild, RejectsBadModuli) {
  EXPECT_THROW(crt_build(std::vector<std::uint64_t>{2, 4}), std::invalid_argument);
  EXPECT_THROW(crt_build(std::vector<std::uint64_t>{3, 3}), std::invalid_argument);
  EXPECT_THROW(crt_build(std::vector<std::uint64_t>{1}), std::invalid_argument);
}

TEST(CrtInverse, RejectsOffGridInput) {
  const CrtSystem crt = crt_build(std::vector<std::uint64_t>{2, 3});
  EXPECT_THROW(crt_inverse(Rational(1, 7), crt), std::invalid_argument);
}

TEST(CrtExhaustive, SmallModuliHaveNoFailures) {
  const StatReport rep = check_crt_exhaustive(210);
  EXPECT_EQ(rep.statistic, 0.0);
  EXPECT_GT(rep.samples, 20u);
}

TEST(FloorP, SmallCases) {
  const std::vector<std::uint64_t> p{2, 4};
  const RationalMatrix zero = floor_p(Matrix(2, 3, 0.0), p);
  for (const auto& v : zero.data()) EXPECT_EQ(v, 0);
  const RationalMatrix f = floor_p(Matrix{{0.6}, {0.25}}, p);
  EXPECT_EQ(f(0, 0), Rational(1, 2));
  EXPECT_EQ(f(1, 0), Rational(1, 4));
  const SmallIntMatrix num = floor_p_numerators(Matrix{{0.6}, {0.25}}, p);
  EXPECT_EQ(num(0, 0), 1);
  EXPECT_EQ(num(1, 0), 1);
}

TEST(FloorP, RoundingBoundOnRandomCases) {
  Rng rng(40);
  const StatReport rep = check_rounding_bound(200, rng);
  EXPECT_EQ(rep.statistic, 0.0);
}

}  // namespace
}  // namespace latred
