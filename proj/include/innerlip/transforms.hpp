#pragma once

#include <vector>

#include "innerlip/field.hpp"

namespace innerlip {

/// How the box FFT is related to the whole-plane operator.
///  periodic   - the bare Fourier multiplier on the torus [-A, A)^2.
///  free_space - periodic result plus the mean term and the lattice-sum polynomial
///               that cancels the images; accurate on |z| <= A/2 for data in 2D.
enum class Periodization { periodic, free_space };

struct TransformOptions {
  Periodization periodization = Periodization::free_space;
  int lattice_terms = 8;          // number of G_{4m} terms in the image correction
  double multiplier_scale = 1.0;  // fault-injection hook; 1 in normal use
  /// Exponential spectral filter exp(-36 (k/k_max)^order) per axis; 0 disables it.
  int filter_order = 0;
};

enum class TransformMethod { fft, quadrature };

struct TransformDiagnostics {
  TransformMethod method = TransformMethod::fft;
  double periodization_box = 0.0;   // A
  double residual_didentity = 0.0;  // ||d_zbar C w - w||_2 / ||w||_2 (central4), when measured
};

/// Cauchy transform normalized so that the value at the origin vanishes.
/// Requires a `supported_in_2D` field on a grid with A >= 4.
ComplexField cauchy(const ComplexField& omega, const TransformOptions& opt = {},
                    TransformDiagnostics* diag = nullptr);

/// Beurling-Ahlfors transform (multiplier conj(zeta)/zeta, zero at the zero mode).
ComplexField beurling(const ComplexField& omega, const TransformOptions& opt = {});

/// Relative L2 residual of d_zbar(cauchy(w)) - w over samples with |z| <= A/2, central4.
double cauchy_identity_residual(const ComplexField& omega, const TransformOptions& opt = {});

/// sup over 0 < |z| <= A/2 of |Cw(z)| / (|z|^{1-2/p} ||w||_p). Requires p > 2.
double cauchy_decay_check(const ComplexField& omega, double p, const TransformOptions& opt = {});

enum class Kernel { cauchy, beurling };

/// Direct summation over cells: exact piecewise-constant cell integrals (Green's theorem
/// with Gauss-Legendre edges) within 3 cells of the probe, midpoint rule beyond.
/// The Cauchy kernel is normalized by subtracting its value at the origin.
std::vector<cplx> quadrature_oracle(const ComplexField& omega, Kernel kernel,
                                    const std::vector<cplx>& probes);

namespace lattice {
/// Eisenstein sums G_{2k} = sum' w^{-2k} of the unit square lattice Z + iZ,
/// returned for k = 0..kmax (zero where the symmetry forces it).
std::vector<double> eisenstein_unit(int kmax);
}  // namespace lattice

}  // namespace innerlip
