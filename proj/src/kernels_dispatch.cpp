#include <cstdlib>
#include <cstring>

#include "oscnet/kernels.hpp"

namespace oscnet::kern {

#if defined(OSCNET_HAVE_AVX2)
const KernelTable* avx2_table_impl();  // defined in kernels_avx2.cpp
#endif

const KernelTable* avx2_table() {
#if defined(OSCNET_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_table_impl();
#endif
  return nullptr;
}

namespace {

const KernelTable& resolve() {
  const char* env = std::getenv("OSCNET_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return scalar_table();
    if (std::strcmp(env, "avx2") == 0) {
      if (const KernelTable* t = avx2_table()) return *t;
      return scalar_table();  // requested but unavailable
    }
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace oscnet::kern
