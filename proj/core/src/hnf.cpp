#include "latred/hnf.hpp"

#include <utility>

namespace latred {

namespace {

struct ExtendedGcd {
  BigInt g, s, t;  // g = s*a + t*b, g >= 0
};

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    const BigInt q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

// Column operation on both H and U: (col_a, col_b) <- (col_a, col_b) * [[p, q], [r, s]].
void combine_columns(IntegerMatrix& h, IntegerMatrix& u, std::size_t a, std::size_t b,
                     const BigInt& p, const BigInt& q, const BigInt& r, const BigInt& s) {
  auto apply = [&](IntegerMatrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const BigInt xa = x(i, a);
      const BigInt xb = x(i, b);
      x(i, a) = xa * p + xb * r;
      x(i, b) = xa * q + xb * s;
    }
  };
  apply(h);
  apply(u);
}

void add_column_multiple(IntegerMatrix& x, std::size_t dst, std::size_t src, const BigInt& k) {
  for (std::size_t i = 0; i < x.rows(); ++i) x(i, dst) += k * x(i, src);
}

}  // namespace

HermiteForm hermite_normal_form(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermite_normal_form: not square");
  const std::size_t n = m.rows();
  IntegerMatrix h = m;
  IntegerMatrix u = IntegerMatrix::identity(n);

  for (std::size_t i = 0; i < n; ++i) {
    // Clear row i to the right of the diagonal with unimodular 2x2 steps.
    for (std::size_t j = i + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      const BigInt a = h(i, i);
      const BigInt b = h(i, j);
      const ExtendedGcd e = extended_gcd(a, b);
      // [[s, -b/g], [t, a/g]] has determinant (s*a + t*b)/g = 1.
      combine_columns(h, u, i, j, e.s, -b / e.g, e.t, a / e.g);
    }
    if (h(i, i) == 0) throw std::invalid_argument("hermite_normal_form: singular matrix");
    if (h(i, i) < 0) {
      for (std::size_t r = 0; r < n; ++r) {
        h(r, i) = -h(r, i);
        u(r, i) = -u(r, i);
      }
    }
    // Reduce the entries left of the diagonal into [0, h(i, i)).
    for (std::size_t j = 0; j < i; ++j) {
      const BigInt k = -floor_rational(Rational(h(i, j), h(i, i)));
      if (k == 0) continue;
      add_column_multiple(h, j, i, k);
      add_column_multiple(u, j, i, k);
    }
  }
  return {std::move(h), std::move(u)};
}

}  // namespace latred
