#include <cstdlib>
#include <cstring>

#include "stackcut/kernels.hpp"

namespace stackcut::kernels {

#if defined(STACKCUT_WITH_AVX2)
const KernelTable* avx2_table();
#endif

const KernelTable* avx2() {
#if defined(STACKCUT_WITH_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("STACKCUT_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "0") != 0 && *force != '\0') return &scalar();
    const KernelTable* best = avx2();
    return best != nullptr ? best : &scalar();
  }();
  return *chosen;
}

}  // namespace stackcut::kernels
