#include "birkhoff/kernels.hpp"

#include <cmath>

namespace birkhoff::kernels {

namespace {

void hadamard_scalar(const double* a, const double* b, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = a[i] * b[i];
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) y[i] = y[i] + alpha * x[i];
}

void lincomb_scalar(const double* coeffs, std::size_t terms, const double* rows,
                    std::size_t stride, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    double s = 0.0;
    for (std::size_t t = 0; t < terms; ++t) s = s + coeffs[t] * rows[t * stride + i];
    out[i] = s;
  }
}

void abs_accumulate_scalar(const double* x, double* acc, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) acc[i] = acc[i] + std::fabs(x[i]);
}

double max_abs_scalar(const double* x, std::size_t count) {
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double a = std::fabs(x[i]);
    m = a > m ? a : m;
  }
  return m;
}

constexpr KernelTable kScalar{
    "scalar", hadamard_scalar, axpy_scalar, lincomb_scalar, abs_accumulate_scalar, max_abs_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace birkhoff::kernels
