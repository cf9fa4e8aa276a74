// NEON (aarch64) variants: one complex double per 128-bit register.

#include "kernels_impl.hpp"

#if defined(INNERLIP_HAVE_NEON)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace innerlip::kernels::neon {

namespace {
inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(cplx* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }
}  // namespace

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vb = load1(b + i);
    const float64x2_t a_sw = vextq_f64(va, va, 1);              // [ai, ar]
    const float64x2_t b_re = vdupq_laneq_f64(vb, 0);
    const float64x2_t b_im = vdupq_laneq_f64(vb, 1);
    const float64x2_t sign = {-1.0, 1.0};
    store1(out + i, vfmaq_f64(vmulq_f64(va, b_re), vmulq_f64(a_sw, sign), b_im));
  }
}

void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vb = load1(b + i);
    const float64x2_t a_sw = vextq_f64(va, va, 1);
    const float64x2_t b_re = vdupq_laneq_f64(vb, 0);
    const float64x2_t b_im = vdupq_laneq_f64(vb, 1);
    const float64x2_t sign = {1.0, -1.0};
    store1(out + i, vfmaq_f64(vmulq_f64(va, b_re), vmulq_f64(a_sw, sign), b_im));
  }
}

void jacobian(const cplx* a, const cplx* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vb = load1(b + i);
    out[i] = vaddvq_f64(vmulq_f64(va, va)) - vaddvq_f64(vmulq_f64(vb, vb));
  }
}

void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) store1(out + i, vsubq_f64(load1(a + i), load1(b + i)));
}

void abs2(const cplx* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = load1(a + i);
    out[i] = vaddvq_f64(vmulq_f64(v, v));
  }
}

double sum_abs2(const cplx* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = load1(a + i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

double max_abs(const cplx* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = load1(a + i);
    m = std::max(m, vaddvq_f64(vmulq_f64(v, v)));
  }
  return std::sqrt(m);
}

}  // namespace innerlip::kernels::neon

#endif
