#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wmbench {

/// Small dense row-major matrix. Also used as the (rows x dims) grid for
/// state and action sequences.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  void append_row(std::span<const double> values);

  std::span<const double> entries() const noexcept { return data_; }
  std::span<double> entries() noexcept { return data_; }

  Matrix transposed() const;
  bool all_finite() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Infinity norm over entries (max |a_ij|).
double max_abs(const Matrix& a);

/// Solves A x = b for symmetric positive definite A by Cholesky
/// factorization. b may hold several right-hand-side columns.
/// Throws NotSPD when a pivot is not strictly positive.
Matrix solve_spd(const Matrix& a, const Matrix& b);

}  // namespace wmbench
