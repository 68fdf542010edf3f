#include "latred/numeric_types.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace latred {

namespace mp = boost::multiprecision;

BigInt floor_rational(const Rational& r) {
  const BigInt num = mp::numerator(r);
  const BigInt den = mp::denominator(r);  // always positive
  BigInt q = num / den;                   // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational frac_rational(const Rational& r) { return r - Rational(floor_rational(r)); }

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  if (m <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(const BigInt& z) { return z.convert_to<double>(); }

std::int64_t to_int64(const BigInt& z) {
  if (z > std::numeric_limits<std::int64_t>::max() ||
      z < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer does not fit in 64 bits: " + to_string(z));
  }
  return z.convert_to<std::int64_t>();
}

Matrix to_double(const RationalMatrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

namespace {

template <typename T>
DenseMatrix<T> multiply_impl(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  DenseMatrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

}  // namespace

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  return multiply_impl(a, b);
}
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  return multiply_impl(a, b);
}
Matrix multiply(const Matrix& a, const Matrix& b) { return multiply_impl(a, b); }

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(pivot, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const Rational factor = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= factor * a(c, j);
    }
  }
  return det;
}

BigInt determinant(const IntegerMatrix& m) {
  // Bareiss fraction-free elimination keeps every intermediate integral.
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) throw std::invalid_argument("inverse: matrix is singular");
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(c, j), a(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    }
    const Rational p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational factor = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= factor * a(c, j);
        inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

namespace {

template <typename T>
Vector multiply_vec(const Matrix& a, std::span<const T> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("multiply: shape mismatch");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * static_cast<double>(v[j]);
    out[i] = acc;
  }
  return out;
}

}  // namespace

Vector multiply(const Matrix& a, std::span<const double> v) { return multiply_vec(a, v); }
Vector multiply(const Matrix& a, std::span<const std::int64_t> v) {
  return multiply_vec(a, v);
}
Vector multiply(const Matrix& a, std::span<const int> v) { return multiply_vec(a, v); }

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double max_column_norm(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

double frac(double x) noexcept {
  double f = x - std::floor(x);
  // x = -1e-17 gives 1 - 1e-17 which rounds to 1.0.
  if (f >= 1.0) f = 0.0;
  return f;
}

double balanced_mod1(double x) noexcept {
  double f = frac(x);
  if (f > 0.5) f -= 1.0;
  return f;
}

std::string to_string(const BigInt& z) { return z.str(); }

BigInt big_int_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer string");
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed integer: " + s);
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer: " + s);
  }
  return BigInt(s);
}

}  // namespace latred
