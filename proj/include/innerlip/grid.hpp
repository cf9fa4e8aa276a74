#pragma once

#include <complex>
#include <cstddef>

namespace innerlip {

using cplx = std::complex<double>;

/// Uniform square grid over [-A, A]^2 with n samples per axis.
/// Sample (j, k) sits at z = (-A + j*delta) + i(-A + k*delta); storage is row-major
/// with rows indexed by k (the imaginary coordinate).
struct GridSpec {
  double half_width = 4.0;
  std::size_t n = 256;

  double spacing() const { return 2.0 * half_width / static_cast<double>(n); }
  std::size_t size() const { return n * n; }
  std::size_t index(std::size_t j, std::size_t k) const { return k * n + j; }
  cplx point(std::size_t j, std::size_t k) const {
    const double d = spacing();
    return {-half_width + static_cast<double>(j) * d, -half_width + static_cast<double>(k) * d};
  }
  cplx point(std::size_t flat) const { return point(flat % n, flat / n); }
  /// Index of the sample at the origin (always a grid point since n is even).
  std::size_t origin_index() const { return index(n / 2, n / 2); }
  /// Nearest sample to z, clamped to the box.
  std::size_t nearest_index(cplx z) const;

  /// Throws Error(usage) unless n >= 16 is a power of two and A > 0.
  void validate() const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.half_width == b.half_width && a.n == b.n;
  }
};

}  // namespace innerlip
