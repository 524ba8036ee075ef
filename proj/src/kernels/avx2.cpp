#include <immintrin.h>

#include "birkhoff/kernels.hpp"

#define BIRKHOFF_AVX2 __attribute__((target("avx2")))

namespace birkhoff::kernels {

namespace {

// Tails reuse the scalar loops so that every element sees the same operations.

BIRKHOFF_AVX2 void hadamard_avx2(const double* a, const double* b, double* out,
                                 std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  scalar_kernels().hadamard(a + i, b + i, out + i, count - i);
}

BIRKHOFF_AVX2 void axpy_avx2(double alpha, const double* x, double* y, std::size_t count) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  scalar_kernels().axpy(alpha, x + i, y + i, count - i);
}

BIRKHOFF_AVX2 void lincomb_avx2(const double* coeffs, std::size_t terms, const double* rows,
                                std::size_t stride, double* out, std::size_t count) {
  std::size_t i = 0;
  // two independent accumulators per iteration hide the add latency
  for (; i + 8 <= count; i += 8) {
    __m256d s0 = _mm256_setzero_pd();
    __m256d s1 = _mm256_setzero_pd();
    for (std::size_t t = 0; t < terms; ++t) {
      const __m256d c = _mm256_set1_pd(coeffs[t]);
      const double* row = rows + t * stride + i;
      s0 = _mm256_add_pd(s0, _mm256_mul_pd(c, _mm256_loadu_pd(row)));
      s1 = _mm256_add_pd(s1, _mm256_mul_pd(c, _mm256_loadu_pd(row + 4)));
    }
    _mm256_storeu_pd(out + i, s0);
    _mm256_storeu_pd(out + i + 4, s1);
  }
  for (; i + 4 <= count; i += 4) {
    __m256d s = _mm256_setzero_pd();
    for (std::size_t t = 0; t < terms; ++t) {
      s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_set1_pd(coeffs[t]),
                                         _mm256_loadu_pd(rows + t * stride + i)));
    }
    _mm256_storeu_pd(out + i, s);
  }
  scalar_kernels().lincomb(coeffs, terms, rows + i, stride, out + i, count - i);
}

BIRKHOFF_AVX2 void abs_accumulate_avx2(const double* x, double* acc, std::size_t count) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d a = _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), a));
  }
  scalar_kernels().abs_accumulate(x + i, acc + i, count - i);
}

BIRKHOFF_AVX2 double max_abs_avx2(const double* x, std::size_t count) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    // MAXPD returns the second operand when the first is NaN
    m = _mm256_max_pd(_mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)), m);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double best = scalar_kernels().max_abs(x + i, count - i);
  for (double lane : lanes) best = lane > best ? lane : best;
  return best;
}

constexpr KernelTable kAvx2{
    "avx2", hadamard_avx2, axpy_avx2, lincomb_avx2, abs_accumulate_avx2, max_abs_avx2,
};

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
}

}  // namespace birkhoff::kernels
