#pragma once

#include "gluedforms/scalar.hpp"

#include <cassert>
#include <cstddef>
#include <vector>

namespace gluedforms {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T sum(0);
        for (std::size_t k = 0; k < a.cols_; ++k) sum = sum + a(i, k) * b(k, j);
        p(i, j) = sum;
      }
    return p;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using ScalarMatrix = Matrix<Scalar>;
using RationalVector = std::vector<Rational>;

/// Row echelon form computed by fraction-free (Bareiss) elimination.
struct Echelon {
  Matrix<Integer> rows;              // integer echelon rows (rank rows are meaningful)
  std::vector<std::size_t> pivots;  // pivot column of each non-zero row
  std::size_t rank() const { return pivots.size(); }
};

Echelon echelon_form(const RationalMatrix& m);

std::size_t exact_rank(const RationalMatrix& m);

/// Basis of {v : m v = 0}, one primitive integer vector per free column, in
/// increasing order of the free column. The free coordinate is +1 before
/// scaling to integers.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Inverse of a square matrix; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Number of singular values above `relative_cutoff` times the largest.
std::size_t numeric_rank(const Matrix<double>& m, double relative_cutoff = 1e-9);

struct RankResult {
  std::size_t rank = 0;
  bool exact = true;
};

/// Exact rank when every entry is exact, numeric rank with a 1e-9 relative
/// singular-value cutoff otherwise.
RankResult scalar_rank(const ScalarMatrix& m);

/// Smallest eigenvalue of a symmetric matrix (float).
double min_eigenvalue(const Matrix<double>& symmetric);

bool is_exact(const ScalarMatrix& m);
RationalMatrix to_rational(const ScalarMatrix& m);  // throws ModeMismatch on float entries
Matrix<double> to_double(const ScalarMatrix& m);
ScalarMatrix to_scalar(const RationalMatrix& m);

}  // namespace gluedforms
