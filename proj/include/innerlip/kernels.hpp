#pragma once

// Pointwise complex kernels. Each entry has a scalar reference implementation and,
// where the CPU allows it, a vectorized variant selected once at runtime. Setting
// INNERLIP_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>

#include "innerlip/grid.hpp"

namespace innerlip::kernels {

struct KernelTable {
  const char* name;
  // out[i] = a[i] * b[i]
  void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] = a[i] * conj(b[i])
  void (*cmul_conj)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] = |a[i]|^2 - |b[i]|^2
  void (*jacobian)(const cplx* a, const cplx* b, double* out, std::size_t n);
  // out[i] = a[i] - b[i]
  void (*sub)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] = |a[i]|^2
  void (*abs2)(const cplx* a, double* out, std::size_t n);
  // sum |a[i]|^2
  double (*sum_abs2)(const cplx* a, std::size_t n);
  // max |a[i]|
  double (*max_abs)(const cplx* a, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in or the CPU lacks the instructions.
const KernelTable* avx2_table();
const KernelTable* neon_table();
/// The table used by the library; chosen on first call.
const KernelTable& active();

inline void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  active().cmul(a.data(), b.data(), out.data(), out.size());
}
inline void cmul_conj(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  active().cmul_conj(a.data(), b.data(), out.data(), out.size());
}
inline void jacobian(std::span<const cplx> a, std::span<const cplx> b, std::span<double> out) {
  active().jacobian(a.data(), b.data(), out.data(), out.size());
}
inline void sub(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  active().sub(a.data(), b.data(), out.data(), out.size());
}
inline void abs2(std::span<const cplx> a, std::span<double> out) {
  active().abs2(a.data(), out.data(), out.size());
}
inline double sum_abs2(std::span<const cplx> a) { return active().sum_abs2(a.data(), a.size()); }
inline double max_abs(std::span<const cplx> a) { return active().max_abs(a.data(), a.size()); }

}  // namespace innerlip::kernels
