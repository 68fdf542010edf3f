#include "latred/numeric_types.hpp"
#include "latred/rng.hpp"

#include <cmath>
#include <cstdint>
#include <set>

#include "gtest/gtest.h"

namespace latred {
namespace {

TEST(ExactHelpers, FloorAndFracOfNegativeRationals) {
  EXPECT_EQ(floor_rational(Rational(-7, 2)), BigInt(-4));
  EXPECT_EQ(floor_rational(Rational(7, 2)), BigInt(3));
  EXPECT_EQ(floor_rational(Rational(-4)), BigInt(-4));
  EXPECT_EQ(frac_rational(Rational(-7, 2)), Rational(1, 2));
  EXPECT_EQ(frac_rational(Rational(5)), Rational(0));
}

TEST(ExactHelpers, ModFloorIsNonNegative) {
  EXPECT_EQ(mod_floor(BigInt(-1), BigInt(6)), BigInt(5));
  EXPECT_EQ(mod_floor(BigInt(13), BigInt(6)), BigInt(1));
  EXPECT_EQ(mod_floor(BigInt(-12), BigInt(6)), BigInt(0));
}

TEST(ExactHelpers, ToInt64Overflow) {
  EXPECT_EQ(to_int64(BigInt(-42)), -42);
  const BigInt big = BigInt(1) << 70;
  EXPECT_THROW(to_int64(big), std::overflow_error);
}

TEST(ExactHelpers, BigIntStringRoundTrip) {
  const BigInt v = (BigInt(1) << 90) - 12345;
  EXPECT_EQ(big_int_from_string(to_string(v)), v);
  EXPECT_EQ(big_int_from_string("-17"), BigInt(-17));
}

TEST(ExactLinearAlgebra, DeterminantAndInverse) {
  const RationalMatrix m{{Rational(2), Rational(1)}, {Rational(0), Rational(3)}};
  EXPECT_EQ(determinant(m), Rational(6));
  const RationalMatrix inv = inverse(m);
  EXPECT_EQ(multiply(m, inv), RationalMatrix::identity(2));

  const IntegerMatrix z{{BigInt(4), BigInt(7), BigInt(2)},
                        {BigInt(3), BigInt(6), BigInt(1)},
                        {BigInt(2), BigInt(5), BigInt(3)}};
  // cofactor expansion along the first row
  EXPECT_EQ(determinant(z), BigInt(4 * (18 - 5) - 7 * (9 - 2) + 2 * (15 - 12)));

  const RationalMatrix singular{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  EXPECT_THROW(inverse(singular), std::invalid_argument);
}

TEST(Norms, MaxColumnNorm) {
  EXPECT_DOUBLE_EQ(max_column_norm(Matrix::identity(3)), 1.0);
  EXPECT_DOUBLE_EQ(max_column_norm(Matrix{{3, 0}, {4, 0}}), 5.0);
  EXPECT_DOUBLE_EQ(max_column_norm(Matrix{{1, 2}, {2, 1}}), std::sqrt(5.0));
}

TEST(Norms, TextbookInequalities) {
  // ||A v||_2 <= ||A|| ||v||_1 and ||v||_1 <= n ||v||_inf
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const std::size_t m = 1 + trial % 7;
    Matrix a(n, m);
    for (double& v : a.data()) v = rng.normal();
    Vector v(m);
    for (double& x : v) x = rng.normal();
    EXPECT_LE(norm2(multiply(a, v)), max_column_norm(a) * norm1(v) + 1e-12);
    EXPECT_LE(norm1(v), static_cast<double>(m) * norm_inf(v) + 1e-12);
  }
}

TEST(Frac, StaysBelowOne) {
  EXPECT_DOUBLE_EQ(frac(1.5), 0.5);
  EXPECT_DOUBLE_EQ(frac(-0.25), 0.75);
  // -1e-20 + 1 rounds to 1.0 in double
  const double f = frac(-1e-20);
  EXPECT_GE(f, 0.0);
  EXPECT_LT(f, 1.0);
}

TEST(Frac, BalancedRange) {
  EXPECT_DOUBLE_EQ(balanced_mod1(0.75), -0.25);
  EXPECT_DOUBLE_EQ(balanced_mod1(0.5), 0.5);
  EXPECT_DOUBLE_EQ(balanced_mod1(-0.5), 0.5);
  EXPECT_NEAR(balanced_mod1(3.1), 0.1, 1e-12);
  EXPECT_NEAR(balanced_mod1(-2.9), 0.1, 1e-12);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.engine()(), b.engine()());
}

TEST(Rng, ForkIgnoresParentState) {
  Rng a(7);
  const Rng before = a.fork("U", 3);
  for (int i = 0; i < 10; ++i) a.uniform01();
  const Rng after = a.fork("U", 3);
  EXPECT_EQ(before.key(), after.key());
}

TEST(Rng, ForkKeysAreDistinct) {
  const Rng root(1);
  std::set<std::uint64_t> keys;
  for (const char* name : {"trial", "attempt", "U", "V", "discrete", "f", "solver"}) {
    for (std::uint64_t i = 0; i < 50; ++i) keys.insert(root.fork(name, i).key());
  }
  EXPECT_EQ(keys.size(), 7u * 50u);
}

TEST(Rng, UniformIntIsInclusive) {
  Rng rng(3);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform_int(-2, 2);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 2);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 5u);
}

}  // namespace
}  // namespace latred
