#include "latred/crt.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace latred {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t v) noexcept {
  if (v < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (v % b == 0) return v == b;
  }
  std::uint64_t d = v - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  for (std::uint64_t b : kBases) {
    std::uint64_t x = pow_mod(b, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> select_primes(std::size_t n, std::uint64_t m) {
  if (n == 0) throw std::invalid_argument("select_primes: n must be >= 1");
  if (m < n) throw std::invalid_argument("select_primes: requires m >= n");
  const u128 hi128 = static_cast<u128>(320) * n * m;
  if (hi128 > static_cast<u128>(UINT64_MAX / 2)) {
    throw std::invalid_argument("select_primes: 320 n m overflows 64 bits");
  }
  const auto lo = static_cast<std::uint64_t>(32 * static_cast<u128>(n) * m);
  const auto hi = static_cast<std::uint64_t>(hi128);
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = lo; v <= hi && out.size() < n; ++v) {
    if (is_prime_u64(v)) out.push_back(v);
  }
  if (out.size() < n) {
    throw std::invalid_argument("select_primes: only " + std::to_string(out.size()) +
                                " primes in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "], need " + std::to_string(n) + "; widen the range");
  }
  return out;
}

std::uint64_t CrtSystem::min_prime() const {
  if (p.empty()) throw std::logic_error("CrtSystem: empty");
  return *std::min_element(p.begin(), p.end());
}

BigInt CrtSystem::forward(std::span<const std::int64_t> numerators) const {
  if (numerators.size() != p.size()) throw std::invalid_argument("CrtSystem::forward: size mismatch");
  BigInt k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) k += unnormalized(i) * BigInt(numerators[i]);
  return mod_floor(k, q);
}

Rational CrtSystem::forward(std::span<const Rational> y) const {
  if (y.size() != p.size()) throw std::invalid_argument("CrtSystem::forward: size mismatch");
  Rational z = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational scaled = y[i] * Rational(BigInt(p[i]));
    if (denominator(scaled) != 1) {
      throw std::invalid_argument("CrtSystem::forward: entry not a multiple of 1/p_i");
    }
    z += Rational(c[i]) * y[i];
  }
  return frac_rational(z);
}

std::vector<std::int64_t> CrtSystem::inverse_numerators(const BigInt& k) const {
  std::vector<std::int64_t> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = to_int64(mod_floor(k, BigInt(p[i])));
  return out;
}

CrtSystem crt_build(std::span<const std::uint64_t> p) {
  if (p.empty()) throw std::invalid_argument("crt_build: no moduli");
  std::set<std::uint64_t> seen;
  for (std::uint64_t v : p) {
    if (!is_prime_u64(v)) throw std::invalid_argument("crt_build: " + std::to_string(v) + " is not prime");
    if (!seen.insert(v).second) throw std::invalid_argument("crt_build: repeated modulus " + std::to_string(v));
  }
  CrtSystem crt;
  crt.p.assign(p.begin(), p.end());
  crt.q = 1;
  for (std::uint64_t v : p) crt.q *= v;
  for (std::uint64_t v : p) {
    const BigInt cof = crt.q / v;
    // p is prime, so the inverse is cof^(p-2) mod p.
    const auto r = static_cast<std::uint64_t>(cof % v);
    crt.cofactor.push_back(cof);
    crt.c.emplace_back(pow_mod(r, v - 2, v));
  }
  return crt;
}

std::vector<Rational> crt_inverse(const Rational& z, const CrtSystem& crt) {
  const Rational scaled = z * Rational(crt.q);
  if (denominator(scaled) != 1) throw std::invalid_argument("crt_inverse: z is not a multiple of 1/q");
  const BigInt k = mod_floor(numerator(scaled), crt.q);
  const auto a = crt.inverse_numerators(k);
  std::vector<Rational> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(BigInt(a[i]), BigInt(crt.p[i]));
  return out;
}

SmallIntMatrix floor_p_numerators(const Matrix& a, std::span<const std::uint64_t> p) {
  if (a.rows() != p.size()) throw std::invalid_argument("floor_p: one modulus per row required");
  SmallIntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("floor_p: entries must lie in [0, 1)");
      auto k = static_cast<std::int64_t>(std::floor(v * static_cast<double>(p[i])));
      out(i, j) = std::min<std::int64_t>(k, static_cast<std::int64_t>(p[i]) - 1);
    }
  return out;
}

RationalMatrix floor_p(const Matrix& a, std::span<const std::uint64_t> p) {
  const SmallIntMatrix num = floor_p_numerators(a, p);
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(BigInt(num(i, j)), BigInt(p[i]));
  return out;
}

bool crt_modulus_bound_holds(const CrtSystem& crt, std::size_t n, std::uint64_t m) {
  const BigInt base = BigInt(320) * n * m;
  return crt.q <= boost::multiprecision::pow(base, static_cast<unsigned>(n));
}

}  // namespace latred
