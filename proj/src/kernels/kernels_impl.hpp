#pragma once

#include "innerlip/kernels.hpp"

namespace innerlip::kernels {

namespace scalar {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void jacobian(const cplx* a, const cplx* b, double* out, std::size_t n);
void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void abs2(const cplx* a, double* out, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
double max_abs(const cplx* a, std::size_t n);
}  // namespace scalar

#if defined(INNERLIP_HAVE_AVX2)
namespace avx2 {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void jacobian(const cplx* a, const cplx* b, double* out, std::size_t n);
void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void abs2(const cplx* a, double* out, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
double max_abs(const cplx* a, std::size_t n);
}  // namespace avx2
#endif

#if defined(INNERLIP_HAVE_NEON)
namespace neon {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void jacobian(const cplx* a, const cplx* b, double* out, std::size_t n);
void sub(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void abs2(const cplx* a, double* out, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
double max_abs(const cplx* a, std::size_t n);
}  // namespace neon
#endif

}  // namespace innerlip::kernels
