#pragma once

#include "innerlip/report.hpp"
#include "innerlip/transforms.hpp"

namespace innerlip {

/// Smooth density (1 - |z|^2/4)^3 (1 + z/2 + 0.3i z^2) supported in the disk of radius 2.
ComplexField test_density(const GridSpec& grid);

/// d_zbar C w = w (free-space, central4), S = d_z C (periodic, spectral), FFT vs the
/// quadrature oracle at `probes` random points of the disk of radius 2.
VerificationReport transform_identity_report(const GridSpec& grid, const TransformOptions& opt = {},
                                             std::size_t probes = 20, std::uint64_t seed = 7);

/// check_entry over the whole gallery.
VerificationReport gallery_report(const GridSpec& grid);

/// verify_structure on the built-in structures.
VerificationReport structure_report(std::uint64_t seed = 1);

}  // namespace innerlip
