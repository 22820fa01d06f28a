#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace slab::kernels {

const KernelTable* avx2_table() {
#if defined(SLAB_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(SLAB_HAVE_NEON)
  return &neon_table_impl();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select_table() {
  const char* env = std::getenv("SLAB_KERNELS");
  const std::string_view wanted = env ? env : "";
  if (wanted == "scalar") return scalar_table();
  if (wanted == "avx2" && avx2_table()) return *avx2_table();
  if (wanted == "neon" && neon_table()) return *neon_table();
  if (avx2_table()) return *avx2_table();
  if (neon_table()) return *neon_table();
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select_table();
  return table;
}

}  // namespace slab::kernels
