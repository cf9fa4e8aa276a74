#pragma once

#include <functional>
#include <string>

#include "innerlip/field.hpp"

namespace innerlip {

/// Planar domain with a boundary-distance function.
struct Domain {
  std::string name;
  Region inside;                          // open set
  std::function<double(cplx)> distance;   // dist(z, boundary) for z inside
  cplx center = 0.0;                      // bounding disk, used for sampling
  double radius = 1.0;

  bool contains(cplx z) const { return inside(z); }
};

namespace domain {
Domain disk(cplx center, double radius);
Domain unit_disk();
/// {Re z > 0, |z| < 1}
Domain half_disk();
}  // namespace domain

}  // namespace innerlip
