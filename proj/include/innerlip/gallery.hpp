#pragma once

#include <limits>
#include <string>
#include <vector>

#include "innerlip/domain.hpp"

namespace innerlip {

struct Claim {
  std::string key;
  std::string value;
};

/// Closed-form mapping with exact Wirtinger derivatives.
struct GalleryEntry {
  std::string name;
  std::string summary;
  Domain domain;
  /// True within distance `r` of a cut or singular point.
  std::function<bool(cplx z, double r)> singular;
  /// Sampling masks the points within mask_cells * delta of the singular set.
  double mask_cells = 1.0;
  PointFn h, h_z, h_zbar;
  /// Exact Hopf product h_z conj(h_zbar) when it has a simpler closed form; may be empty.
  PointFn hopf;
  std::vector<Claim> expected;
  /// Structure text for parse_structure; empty when the entry solves no admissible structure.
  std::string structure;
  /// Exact Lipschitz constant when known, otherwise NaN.
  double lipschitz = std::numeric_limits<double>::quiet_NaN();

  std::string claim(const std::string& key) const;  // "" when absent
};

/// h, h_z, h_zbar on the grid; samples outside the domain or near singularities are excluded.
/// Sup of |central4 - exact| (h_z and h_zbar) over sup of |h_z| + |h_zbar|, on samples at least
/// min_dist from the boundary and from the mask. Returns -1 when no sample qualifies.
double derivative_error(const GalleryEntry& e, const GridSpec& grid, double min_dist);

struct EntrySamples {
  ComplexField h;
  FieldPair dh;
};
EntrySamples sample_entry(const GalleryEntry& e, const GridSpec& grid);

GalleryEntry cuberoot_example();
GalleryEntry piecewise_example();
GalleryEntry pseudo_hopf_example();
GalleryEntry loglog_example();
GalleryEntry halfdisk_example();
GalleryEntry harmonic_probe(cplx c);

std::vector<GalleryEntry> gallery();
/// Lookup by name ("harmonic_probe" uses c = 0.2; "harmonic_probe:c" parses c). Throws Error(usage).
GalleryEntry gallery_entry(const std::string& name);

namespace pseudo_hopf {
/// t as a function of psi >= 1.
double t_of_psi(double psi);
/// Inverse of t_of_psi, |error| <= 1e-12 relative.
double psi(double t);
/// psi'(t) = (psi - sqrt(psi^2 - 1)) / 2.
double psi_prime(double t);
}  // namespace pseudo_hopf

}  // namespace innerlip
