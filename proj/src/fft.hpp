#pragma once

// Thin FFTW wrapper: unnormalized forward 2-D DFT, normalized inverse.

#include <vector>

#include "innerlip/grid.hpp"

namespace innerlip::detail {

void fft2d(std::vector<cplx>& data, std::size_t n, bool inverse);

/// Angular wavenumber of DFT bin m on a box of half-width A (Nyquist bin reported as 0).
inline double wavenumber(std::size_t m, std::size_t n, double half_width) {
  constexpr double pi = 3.14159265358979323846;
  if (2 * m == n) return 0.0;
  const double s = (2 * m < n) ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
  return pi * s / half_width;
}

inline bool is_nyquist(std::size_t m, std::size_t n) { return 2 * m == n; }

}  // namespace innerlip::detail
