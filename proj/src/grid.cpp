#include "innerlip/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "innerlip/error.hpp"

namespace innerlip {

std::size_t GridSpec::nearest_index(cplx z) const {
  const double d = spacing();
  auto axis = [&](double x) {
    const double j = std::round((x + half_width) / d);
    return static_cast<std::size_t>(std::clamp(j, 0.0, static_cast<double>(n - 1)));
  };
  return index(axis(z.real()), axis(z.imag()));
}

void GridSpec::validate() const {
  if (n < 16 || (n & (n - 1)) != 0)
    fail(ErrorKind::usage, "grid size n=" + std::to_string(n) + " must be a power of two >= 16");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    fail(ErrorKind::usage, "grid half-width must be positive and finite");
}

}  // namespace innerlip
