#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

// Data-parallel inner loops used by grid evaluation, dense factorization and
// the simplex tableau. Every variant performs the same IEEE operations per
// element in the same order (no FMA contraction, no reassociation), so all
// variants produce bit-identical results and can be swapped freely.
namespace birkhoff::kernels {

struct KernelTable {
  std::string_view name;

  // out[i] = a[i] * b[i]
  void (*hadamard)(const double* a, const double* b, double* out, std::size_t count);

  // y[i] = y[i] + alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t count);

  // out[i] = sum_t coeffs[t] * rows[t * stride + i], accumulated from 0.0 in
  // increasing t.
  void (*lincomb)(const double* coeffs, std::size_t terms, const double* rows,
                  std::size_t stride, double* out, std::size_t count);

  // acc[i] = acc[i] + |x[i]|
  void (*abs_accumulate)(const double* x, double* acc, std::size_t count);

  // max_i |x[i]|, 0 for an empty range; NaN entries are skipped.
  double (*max_abs)(const double* x, std::size_t count);
};

const KernelTable& scalar_kernels();

// nullptr when the variant is not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Scalar first, then every SIMD variant usable on this machine.
std::vector<const KernelTable*> available_kernels();

// The table used by the library. Picked once: the widest available variant,
// unless BIRKHOFF_KERNELS=scalar|avx2|neon names another usable one.
const KernelTable& active();

}  // namespace birkhoff::kernels
