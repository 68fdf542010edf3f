#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latred/numeric_types.hpp"

namespace latred {

/// Deterministic Miller-Rabin for 64-bit integers (bases 2..37).
bool is_prime_u64(std::uint64_t v) noexcept;

/// The n smallest primes in [32 n m, 320 n m]. Throws std::invalid_argument
/// when the interval holds fewer than n primes or 320 n m overflows.
std::vector<std::uint64_t> select_primes(std::size_t n, std::uint64_t m);

/// Normalized CRT map between (+)_i 1/p_i Z/p_i Z and 1/q Z/qZ.
///
/// Elements of the domain are stored by numerators a_i in [0, p_i) (so
/// y_i = a_i / p_i) and elements of the range by k in [0, q) (z = k / q).
///   forward:  k = sum_i c_i (q/p_i) a_i mod q,  c_i = (q/p_i)^{-1} mod p_i
///   inverse:  a_i = k mod p_i, i.e. (q/p_i) z mod 1
struct CrtSystem {
  std::vector<std::uint64_t> p;
  BigInt q;
  std::vector<BigInt> c;         // normalized coefficients, 0 <= c_i < p_i
  std::vector<BigInt> cofactor;  // q / p_i

  std::size_t size() const noexcept { return p.size(); }
  std::uint64_t min_prime() const;

  /// c_i (q / p_i): the un-normalized CRT coefficient, divisible by q/p_i.
  BigInt unnormalized(std::size_t i) const { return c[i] * cofactor[i]; }

  BigInt forward(std::span<const std::int64_t> numerators) const;
  Rational forward(std::span<const Rational> y) const;
  std::vector<std::int64_t> inverse_numerators(const BigInt& k) const;
};

/// Throws std::invalid_argument for non-prime or repeated moduli.
CrtSystem crt_build(std::span<const std::uint64_t> p);

/// ((q/p_i) z mod 1)_i as exact rationals in [0, 1). Throws
/// std::invalid_argument when q z is not an integer.
std::vector<Rational> crt_inverse(const Rational& z, const CrtSystem& crt);

/// Entry-wise floor(A(i, j) p_i): the numerators of floor_p(A).
SmallIntMatrix floor_p_numerators(const Matrix& a, std::span<const std::uint64_t> p);

/// floor(A(i, j) p_i) / p_i. Entries must lie in [0, 1).
RationalMatrix floor_p(const Matrix& a, std::span<const std::uint64_t> p);

/// q <= (320 n m)^n, compared exactly.
bool crt_modulus_bound_holds(const CrtSystem& crt, std::size_t n, std::uint64_t m);

}  // namespace latred
