#pragma once

#include "replete/polynomial.hpp"
#include "replete/rational.hpp"

#include <cstddef>
#include <vector>

namespace replete {

// Dense row-major matrix with exact entries.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

// Row vector times matrix.
RationalVector row_times(const RationalVector& v, const QMatrix& m);

Rational determinant(QMatrix m);
// Throws DomainError when singular.
QMatrix inverse(const QMatrix& m);
// det(x I - m), via reduction to upper Hessenberg form.
Polynomial characteristic_polynomial(const QMatrix& m);
QMatrix kronecker(const QMatrix& a, const QMatrix& b);

// Row Hermite normal form of the lattice spanned by the rows of `gens`,
// which must have full column rank. The result is square, upper triangular,
// has a positive diagonal, and entries above each pivot lie in [0, pivot).
ZMatrix hermite_normal_form(const ZMatrix& gens);
Integer determinant(const ZMatrix& upper_triangular);

}  // namespace replete
