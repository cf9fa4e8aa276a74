// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and is
// only entered after the dispatcher has confirmed CPU support.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace innerlip::kernels::avx2 {

namespace {

// Two complex doubles per 256-bit register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// Per-element |z|^2 for four complex values packed in two registers, in order.
inline __m256d norm4(__m256d lo, __m256d hi) {
  const __m256d s = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
  // hadd yields [n0, n2, n1, n3]
  return _mm256_permute4x64_pd(s, 0xD8);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    store2(out + i, _mm256_fmaddsub_pd(va, b_re, _mm256_mul_pd(a_sw, b_im)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    store2(out + i, _mm256_fmsubadd_pd(va, b_re, _mm256_mul_pd(a_sw, b_im)));
  }
  for (; i < n; ++i) out[i] = a[i] * std::conj(b[i]);
}

void jacobian(const cplx* a, const cplx* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d na = norm4(load2(a + i), load2(a + i + 2));
    const __m256d nb = norm4(load2(b + i), load2(b + i + 2));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(na, nb));
  }
  for (; i < n; ++i) out[i] = std::norm(a[i]) - std::norm(b[i]);
}

void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, _mm256_sub_pd(load2(a + i), load2(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void abs2(const cplx* a, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, norm4(load2(a + i), load2(a + i + 2)));
  for (; i < n; ++i) out[i] = std::norm(a[i]);
}

double sum_abs2(const cplx* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = load2(a + i);
    const __m256d v1 = load2(a + i + 2);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += std::norm(a[i]);
  return s;
}

double max_abs(const cplx* a, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, norm4(load2(a + i), load2(a + i + 2)));
  double best = std::sqrt(hmax(m));
  for (; i < n; ++i) best = std::max(best, std::abs(a[i]));
  return best;
}

}  // namespace innerlip::kernels::avx2
