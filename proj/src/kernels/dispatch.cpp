#include "kernels_impl.hpp"

#include <cstdlib>
#include <cstring>

namespace innerlip::kernels {

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar",          scalar::cmul,     scalar::cmul_conj,
                                 scalar::jacobian,  scalar::sub,      scalar::abs2,
                                 scalar::sum_abs2,  scalar::max_abs};
  return table;
}

const KernelTable* avx2_table() {
#if defined(INNERLIP_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2",         avx2::cmul,     avx2::cmul_conj, avx2::jacobian,
                                 avx2::sub,      avx2::abs2,     avx2::sum_abs2,  avx2::max_abs};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(INNERLIP_HAVE_NEON)
  static const KernelTable table{"neon",         neon::cmul,     neon::cmul_conj, neon::jacobian,
                                 neon::sub,      neon::abs2,     neon::sum_abs2,  neon::max_abs};
  return &table;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* forced = std::getenv("INNERLIP_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace innerlip::kernels
