#include "innerlip/domain.hpp"

#include <algorithm>
#include <sstream>

namespace innerlip::domain {

Domain disk(cplx center, double radius) {
  std::ostringstream os;
  os << "disk(" << center.real() << "," << center.imag() << ";" << radius << ")";
  Domain d;
  d.name = os.str();
  d.inside = [=](cplx z) { return std::abs(z - center) < radius; };
  d.distance = [=](cplx z) { return std::max(0.0, radius - std::abs(z - center)); };
  d.center = center;
  d.radius = radius;
  return d;
}

Domain unit_disk() {
  Domain d = disk(0.0, 1.0);
  d.name = "unit_disk";
  return d;
}

Domain half_disk() {
  Domain d;
  d.name = "half_disk";
  d.inside = [](cplx z) { return z.real() > 0.0 && std::abs(z) < 1.0; };
  d.distance = [](cplx z) { return std::max(0.0, std::min(z.real(), 1.0 - std::abs(z))); };
  d.center = 0.0;
  d.radius = 1.0;
  return d;
}

}  // namespace innerlip::domain
