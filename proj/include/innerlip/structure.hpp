#pragma once

#include <array>
#include <functional>
#include <string>

#include "innerlip/field.hpp"
#include "innerlip/report.hpp"

namespace innerlip {

using StructureFn = std::function<cplx(cplx z, cplx xi)>;

/// The equation h_zbar = H(z, h_z) on the unit disk with its declared structural data:
///   |H(z,x1) - H(z,x2)| <= L |1/x1 - 1/x2|            for |x1|, |x2| > R
///   sup_z |H(z,x)| + Hoelder_alpha seminorm in z <= M  for |x| > R
struct StructureSpec {
  std::string name;  // canonical text form, e.g. "rational:a=6,b=-2,R=2"
  StructureFn H;
  double L = 0.0;
  double M = 0.0;
  double alpha = 1.0;  // declared Hoelder exponent; values outside (0,1] violate the hypothesis
  double R = 0.0;
  /// True when H does not depend on z (the Hoelder part of M vanishes).
  bool z_independent = false;

  bool hoelder_hypothesis() const { return alpha > 0.0 && alpha <= 1.0; }
  /// Throws Error(hypothesis) when the Hoelder hypothesis fails.
  void require_hypothesis(const std::string& who) const;
};

/// Operator constants entering lambda_0; p = 3 / alpha.
struct OperatorConstants {
  double p = 3.0;
  double S_p = 2.0;  // bound for the norm of the Beurling transform on L^p
  double B_p = 1.0;  // Besov -> L^inf embedding constant
  double C_p = 1.0;  // Cauchy decay constant
  std::string provenance;

  void validate() const;
};

/// Default constants: S_p = p - 1, B_p and C_p measured on probe densities and doubled.
/// Calibration runs once per alpha and is cached.
OperatorConstants default_constants(double alpha);
/// max over probe densities of max(||w||_inf, ||S w||_inf / S_p) / ||w||_{alpha,p}.
double measure_besov_embedding(double alpha, double p, double S_p);
/// cauchy_decay_check on the (cell-averaged) unit-disk indicator.
double measure_cauchy_decay(double p);

/// The whole-plane extension: H on the disk, (2-|z|) H(1/zbar, xi) on 1 <= |z| <= 2, 0 beyond.
struct ExtendedStructure {
  StructureSpec base;
  cplx operator()(cplx z, cplx xi) const;
};

ExtendedStructure extend(const StructureSpec& spec);

/// The five terms (Lambda_1 .. Lambda_5) and their maximum.
std::array<double, 5> lambda_terms(const StructureSpec& spec, const OperatorConstants& c);
double lambda_zero(const StructureSpec& spec, const OperatorConstants& c);

/// M + sqrt(L) + R: the a-priori bound on ||h_zbar||_inf for solutions with J_h >= 0.
double antiholomorphic_bound(const StructureSpec& spec);

/// Hopf product phi with its declared bounds on the unit disk.
struct HopfData {
  std::string name;
  PointFn phi;
  double sup = 0.0;     // sup |phi| on the disk
  double holder = 0.0;  // Hoelder constant of phi for exponent alpha
  double alpha = 1.0;
};

/// h_z conj(h_zbar) = phi  <=>  H(z, xi) = conj(phi(z)) / conj(xi), with
/// L = sup|phi|, R = sqrt(sup|phi|), M = sqrt(sup|phi|) + holder / R.
StructureSpec hopf_structure(const HopfData& phi);
/// Variant that measures sup and a Lipschitz (alpha = 1) constant from samples on the disk.
StructureSpec hopf_structure(const ComplexField& phi);

/// H(xi) = a / xi + b with L = |a|, M = |a|/R + |b|.
StructureSpec rational_structure(cplx a, cplx b, double R = 2.0);
/// H(z) = a + b z (independent of xi): L = 0, M = |a| + 2|b|, R = 0.
StructureSpec affine_structure(cplx a, cplx b);
StructureSpec zero_structure();

/// Parses `name:param=value,...`: zero | hopf:phi=<c>|const:<c>|z[,alpha=..] |
/// rational:a=..,b=..[,R=..] | rational:<a>,<b> | affine:a=..,b=.. | loglog.
StructureSpec parse_structure(const std::string& text);
/// Complex literal such as "-1", "2.5", "3i", "1-0.5i".
cplx parse_complex(const std::string& text);

/// Monte-Carlo check of the declared constants; failures are report entries.
VerificationReport verify_structure(const StructureSpec& spec, std::size_t samples = 2000, std::uint64_t seed = 1);

}  // namespace innerlip
