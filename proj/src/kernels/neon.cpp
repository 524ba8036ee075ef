#include <arm_neon.h>

#include "birkhoff/kernels.hpp"

// AArch64 only: NEON with float64x2_t is part of the base ISA there.
namespace birkhoff::kernels {

namespace {

void hadamard_neon(const double* a, const double* b, double* out, std::size_t count) {
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  scalar_kernels().hadamard(a + i, b + i, out + i, count - i);
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t count) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    // separate mul/add: vfmaq would round once and break parity with scalar
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  scalar_kernels().axpy(alpha, x + i, y + i, count - i);
}

void lincomb_neon(const double* coeffs, std::size_t terms, const double* rows,
                  std::size_t stride, double* out, std::size_t count) {
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    float64x2_t s = vdupq_n_f64(0.0);
    for (std::size_t t = 0; t < terms; ++t) {
      s = vaddq_f64(s, vmulq_f64(vdupq_n_f64(coeffs[t]), vld1q_f64(rows + t * stride + i)));
    }
    vst1q_f64(out + i, s);
  }
  scalar_kernels().lincomb(coeffs, terms, rows + i, stride, out + i, count - i);
}

void abs_accumulate_neon(const double* x, double* acc, std::size_t count) {
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vabsq_f64(vld1q_f64(x + i))));
  }
  scalar_kernels().abs_accumulate(x + i, acc + i, count - i);
}

double max_abs_neon(const double* x, std::size_t count) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const float64x2_t a = vabsq_f64(vld1q_f64(x + i));
    // keep m where a is NaN or not larger, matching the scalar comparison
    m = vbslq_f64(vcgtq_f64(a, m), a, m);
  }
  double best = scalar_kernels().max_abs(x + i, count - i);
  const double l0 = vgetq_lane_f64(m, 0);
  const double l1 = vgetq_lane_f64(m, 1);
  best = l0 > best ? l0 : best;
  best = l1 > best ? l1 : best;
  return best;
}

constexpr KernelTable kNeon{
    "neon", hadamard_neon, axpy_neon, lincomb_neon, abs_accumulate_neon, max_abs_neon,
};

}  // namespace

const KernelTable* neon_kernels() { return &kNeon; }

}  // namespace birkhoff::kernels
