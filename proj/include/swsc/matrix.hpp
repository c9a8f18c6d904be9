#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace swsc {

/// Dense row-major matrix of doubles.
///
/// Every value is finite; construction from external data checks this.
/// Zero extents are allowed so that an empty low-rank factor (rank 0) has a
/// natural representation; weight matrices proper are always non-empty.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  /// Nested-list literal, mainly for tests: `Matrix::from_rows({{1, 2}, {3, 4}})`.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * cols_, cols_}; }

  std::vector<double> column(std::size_t j) const;
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// The object being compressed.
using WeightMatrix = Matrix;

/// Throws ShapeError if either extent is zero.
void require_nonempty(const Matrix& a, const char* what);

/// Standard product. `threads > 1` splits output rows across workers; each
/// entry is accumulated in the same order regardless, so results are bitwise
/// identical to the sequential path.
Matrix matmul(const Matrix& a, const Matrix& b, unsigned threads = 1);

double frobenius_norm(const Matrix& a);

/// Element-wise a - b.
Matrix subtract(const Matrix& a, const Matrix& b);
/// Element-wise a + b.
Matrix add(const Matrix& a, const Matrix& b);

}  // namespace swsc
