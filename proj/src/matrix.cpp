#include "birkhoff/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"

namespace birkhoff {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector product: size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

SignedLog SignedLog::from_value(double v) {
  if (v == 0.0) return {};
  return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
}

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

SignedLog& SignedLog::operator*=(const SignedLog& other) {
  if (sign == 0 || other.sign == 0) {
    *this = SignedLog{};
  } else {
    sign *= other.sign;
    log_magnitude += other.log_magnitude;
  }
  return *this;
}

LuFactorization::LuFactorization(Matrix a)
    : rows_(a.rows()), cols_(a.cols()), steps_(std::min(a.rows(), a.cols())), lu_(std::move(a)) {
  row_perm_.resize(rows_);
  col_perm_.resize(cols_);
  std::iota(row_perm_.begin(), row_perm_.end(), 0);
  std::iota(col_perm_.begin(), col_perm_.end(), 0);

  const auto& k = kernels::active();
  for (std::size_t s = 0; s < steps_; ++s) {
    std::size_t pr = s;
    std::size_t pc = s;
    double best = 0.0;
    for (std::size_t i = s; i < rows_; ++i) {
      for (std::size_t j = s; j < cols_; ++j) {
        const double v = std::fabs(lu_(i, j));
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (best == 0.0) break;  // remaining block is exactly zero
    if (pr != s) {
      std::swap_ranges(lu_.row(s).begin(), lu_.row(s).end(), lu_.row(pr).begin());
      std::swap(row_perm_[s], row_perm_[pr]);
      perm_sign_ = -perm_sign_;
    }
    if (pc != s) {
      for (std::size_t i = 0; i < rows_; ++i) std::swap(lu_(i, s), lu_(i, pc));
      std::swap(col_perm_[s], col_perm_[pc]);
      perm_sign_ = -perm_sign_;
    }
    const double pivot = lu_(s, s);
    const std::size_t tail = cols_ - s - 1;
    for (std::size_t i = s + 1; i < rows_; ++i) {
      const double factor = lu_(i, s) / pivot;
      lu_(i, s) = factor;
      if (factor != 0.0 && tail > 0) {
        k.axpy(-factor, &lu_(s, s + 1), &lu_(i, s + 1), tail);
      }
    }
  }

  double pmax = 0.0;
  double pmin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < steps_; ++s) {
    const double p = std::fabs(lu_(s, s));
    pmax = std::max(pmax, p);
    pmin = std::min(pmin, p);
  }
  pivot_ratio_ = (steps_ == 0) ? 1.0 : (pmax == 0.0 ? 0.0 : pmin / pmax);
}

void LuFactorization::require_square(const char* what) const {
  if (!square()) {
    throw DimensionMismatch(std::string(what) + " needs a square matrix, got " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

std::size_t LuFactorization::rank(double tolerance) const {
  double pmax = 0.0;
  for (std::size_t s = 0; s < steps_; ++s) pmax = std::max(pmax, std::fabs(lu_(s, s)));
  std::size_t r = 0;
  for (std::size_t s = 0; s < steps_; ++s) {
    if (pmax > 0.0 && std::fabs(lu_(s, s)) > tolerance * pmax) ++r;
  }
  return r;
}

SignedLog LuFactorization::determinant() const {
  require_square("determinant");
  SignedLog det{perm_sign_, 0.0};
  for (std::size_t s = 0; s < steps_; ++s) det *= SignedLog::from_value(lu_(s, s));
  return det;
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  require_square("LU solve");
  const std::size_t n = rows_;
  if (b.size() != n) throw DimensionMismatch("LU solve: right-hand side size mismatch");
  std::vector<double> y(n);
  for (std::size_t s = 0; s < n; ++s) y[s] = b[row_perm_[s]];
  for (std::size_t i = 0; i < n; ++i) {
    double v = y[i];
    for (std::size_t j = 0; j < i; ++j) v -= lu_(i, j) * y[j];
    y[i] = v;
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = y[i];
    for (std::size_t j = i + 1; j < n; ++j) v -= lu_(i, j) * y[j];
    y[i] = v / lu_(i, i);
  }
  std::vector<double> x(n);
  for (std::size_t s = 0; s < n; ++s) x[col_perm_[s]] = y[s];
  return x;
}

std::vector<double> LuFactorization::solve_transpose(std::span<const double> c) const {
  require_square("LU transpose solve");
  const std::size_t n = rows_;
  if (c.size() != n) throw DimensionMismatch("LU transpose solve: size mismatch");
  std::vector<double> g(n);
  for (std::size_t s = 0; s < n; ++s) g[s] = c[col_perm_[s]];
  // U^T g' = g
  for (std::size_t i = 0; i < n; ++i) {
    double v = g[i];
    for (std::size_t j = 0; j < i; ++j) v -= lu_(j, i) * g[j];
    g[i] = v / lu_(i, i);
  }
  // L^T h = g'
  for (std::size_t i = n; i-- > 0;) {
    double v = g[i];
    for (std::size_t j = i + 1; j < n; ++j) v -= lu_(j, i) * g[j];
    g[i] = v;
  }
  std::vector<double> y(n);
  for (std::size_t s = 0; s < n; ++s) y[row_perm_[s]] = g[s];
  return y;
}

std::vector<double> LuFactorization::null_vector(double tolerance) const {
  const std::size_t r = rank(tolerance);
  if (r >= cols_) throw InvalidArgument("null_vector: matrix has full column rank");
  // U z = 0 with z_r = 1 and z_j = 0 beyond r
  std::vector<double> z(cols_, 0.0);
  z[r] = 1.0;
  for (std::size_t i = r; i-- > 0;) {
    double v = -lu_(i, r);
    for (std::size_t j = i + 1; j < r; ++j) v -= lu_(i, j) * z[j];
    z[i] = v / lu_(i, i);
  }
  double norm = 0.0;
  for (double v : z) norm += v * v;
  norm = std::sqrt(norm);
  std::vector<double> x(cols_);
  for (std::size_t s = 0; s < cols_; ++s) x[col_perm_[s]] = z[s] / norm;
  return x;
}

}  // namespace birkhoff
