#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace latred {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Vector = std::vector<double>;
using IntVector = std::vector<std::int64_t>;

// Dense row-major matrix. Columns are the lattice/sample vectors throughout
// the library, so column accessors are provided alongside element access.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  // Row-major nested initializer: DenseMatrix<int>{{1, 2}, {3, 4}}.
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw std::invalid_argument("DenseMatrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  void set_col(std::size_t j, std::span<const T> values) {
    if (values.size() != rows_) {
      throw std::invalid_argument("DenseMatrix::set_col: size mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
  }

  const std::vector<T>& data() const noexcept { return data_; }
  std::vector<T>& data() noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using RationalMatrix = DenseMatrix<Rational>;
using IntegerMatrix = DenseMatrix<BigInt>;
using SmallIntMatrix = DenseMatrix<std::int64_t>;

// --- exact helpers -------------------------------------------------------

/// Floor of a rational as an arbitrary-precision integer.
BigInt floor_rational(const Rational& r);

/// Fractional part r - floor(r), always in [0, 1).
Rational frac_rational(const Rational& r);

/// Non-negative residue of a modulo m (m > 0).
BigInt mod_floor(const BigInt& a, const BigInt& m);

double to_double(const Rational& r);
double to_double(const BigInt& z);

/// Converts an integer-valued BigInt to int64, throwing std::overflow_error
/// when it does not fit.
std::int64_t to_int64(const BigInt& z);

Matrix to_double(const RationalMatrix& m);
RationalMatrix to_rational(const IntegerMatrix& m);

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

/// Exact determinant by fraction-free Gaussian elimination.
Rational determinant(const RationalMatrix& m);
BigInt determinant(const IntegerMatrix& m);

/// Exact inverse; throws std::invalid_argument if m is singular.
RationalMatrix inverse(const RationalMatrix& m);

// --- floating helpers ----------------------------------------------------

Vector multiply(const Matrix& a, std::span<const double> v);
Vector multiply(const Matrix& a, std::span<const std::int64_t> v);
Vector multiply(const Matrix& a, std::span<const int> v);
Matrix multiply(const Matrix& a, const Matrix& b);

double norm1(std::span<const double> v);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

/// ||A|| in the max-column sense: max_j ||a_j||_2. Not the spectral norm.
double max_column_norm(const Matrix& a);

/// Fractional part x - floor(x) mapped into [0, 1) even when rounding would
/// produce exactly 1.0.
double frac(double x) noexcept;

/// Balanced representative of x modulo 1, in (-1/2, 1/2].
double balanced_mod1(double x) noexcept;

std::string to_string(const BigInt& z);
BigInt big_int_from_string(const std::string& s);

}  // namespace latred
