#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace birkhoff {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A real number stored as sign * exp(log_magnitude); sign 0 means exactly zero.
struct SignedLog {
  int sign = 0;
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static SignedLog from_value(double v);
  double value() const;
  SignedLog& operator*=(const SignedLog& other);
};

// PAQ = LU with complete (row and column) pivoting. Pivot magnitudes are
// non-increasing, so the ratio of the last to the first pivot is a cheap
// rank-revealing conditioning measure. Rectangular input is accepted for
// rank and null-space queries; solves and determinants need a square matrix.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  // min |pivot| / max |pivot| over the min(rows, cols) pivots, zero for a zero
  // matrix.
  double pivot_ratio() const noexcept { return pivot_ratio_; }
  bool regular(double tolerance) const noexcept { return pivot_ratio_ > tolerance; }

  // Number of pivots with |p| > tolerance * max |p|.
  std::size_t rank(double tolerance) const;

  SignedLog determinant() const;

  std::vector<double> solve(std::span<const double> b) const;
  // Solves A^T y = c.
  std::vector<double> solve_transpose(std::span<const double> c) const;

  // Unit 2-norm x with A x ~ 0, from the leading rank(tolerance) block of U.
  // Requires rank(tolerance) < cols().
  std::vector<double> null_vector(double tolerance) const;

 private:
  void require_square(const char* what) const;

  std::size_t rows_;
  std::size_t cols_;
  std::size_t steps_;
  Matrix lu_;
  std::vector<std::size_t> row_perm_;  // row s of PA is row row_perm_[s] of A
  std::vector<std::size_t> col_perm_;  // column s of AQ is column col_perm_[s] of A
  int perm_sign_ = 1;
  double pivot_ratio_ = 0.0;
};

}  // namespace birkhoff
