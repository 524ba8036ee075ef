#include <cstdlib>
#include <string_view>

#include "birkhoff/kernels.hpp"

namespace birkhoff::kernels {

#if !defined(BIRKHOFF_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#if !defined(BIRKHOFF_HAVE_NEON)
const KernelTable* neon_kernels() { return nullptr; }
#endif

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const auto* k = avx2_kernels()) out.push_back(k);
  if (const auto* k = neon_kernels()) out.push_back(k);
  return out;
}

namespace {

const KernelTable& select() {
  const auto all = available_kernels();
  if (const char* env = std::getenv("BIRKHOFF_KERNELS")) {
    const std::string_view wanted(env);
    for (const auto* k : all) {
      if (k->name == wanted) return *k;
    }
  }
  return *all.back();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace birkhoff::kernels
