#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>

namespace innerlip::kernels::scalar {

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * std::conj(b[i]);
}

void jacobian(const cplx* a, const cplx* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::norm(a[i]) - std::norm(b[i]);
}

void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void abs2(const cplx* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::norm(a[i]);
}

double sum_abs2(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
  return s;
}

double max_abs(const cplx* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

}  // namespace innerlip::kernels::scalar
