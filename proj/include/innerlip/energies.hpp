#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "innerlip/domain.hpp"
#include "innerlip/report.hpp"

namespace innerlip {

/// Homogeneous F(a, b) on a >= b >= 0 with first and second partials.
struct FFunction {
  std::string name;
  double p = 1.0;  // declared degree
  std::function<double(double, double)> F, Fa, Fb, Faa, Fab, Fbb;
};

namespace ffunc {
/// (a+b)^degree declared with exponent p (defaults to degree).
FFunction power_sum(double degree, double p = -1.0);
/// a b, degree 2.
FFunction product();
/// F(a,b) = (a+b)^p g(b/(a+b)) with g tabulated on [0, 1/2] at equally spaced nodes
/// (natural cubic spline). Homogeneity reduces the two-variable table to this profile.
FFunction tabulated(double p, std::vector<double> profile);
/// "power_sum:p=2", "power_sum:p=2,degree=2.1", "product", "table:p=2,g=1;1.1;1.3".
/// Three-variable (nonisotropic) forms are rejected with Error(usage).
FFunction parse(const std::string& text);
}  // namespace ffunc

using WeightFn = std::function<double(cplx z, cplx w)>;
/// Complex partial d/dz of a weight at fixed w.
using WeightDzFn = std::function<cplx(cplx z, cplx w)>;

/// Stored energy E(z, w, xi, zeta) of the kinds used here, with a = |xi|^2, b = |zeta|^2:
///   dirichlet:    |Dh|^2 = 2(a + b)
///   weighted:     rho(z, w)(a + b)
///   neo_hookean:  F(a, b) / (a - b)^{p-1}
struct EnergyDensity {
  enum class Kind { dirichlet, weighted, neo_hookean };
  Kind kind = Kind::dirichlet;
  WeightFn rho;    // weighted
  WeightDzFn rho_z;  // weighted; d rho / dz at fixed w, optional (finite differences otherwise)
  FFunction F;     // neo_hookean

  static EnergyDensity dirichlet();
  static EnergyDensity weighted(WeightFn rho, WeightDzFn rho_z = {});
  static EnergyDensity neo_hookean(FFunction F);

  double value(cplx z, cplx w, double a, double b) const;
  /// dE/da and dE/db.
  std::pair<double, double> gradient(cplx z, cplx w, double a, double b) const;
  /// Complex partial E_z at fixed (w, xi, zeta).
  cplx partial_z(cplx z, cplx w, double a, double b) const;
};

/// Midpoint rule over unmasked samples in `where`. h is needed only for weighted densities.
/// Throws Error(precondition) listing samples with a - b <= 1e-12 for neo_hookean.
double energy(const FieldPair& dh, const EnergyDensity& density, const Region& where, const ComplexField* h = nullptr);

ComplexField hopf_product(const FieldPair& dh);

/// ||d/dzbar field||_2 / max(||field||_2, 1e-30) over `where`.
double analyticity_residual(const ComplexField& field, const Region& where, Scheme scheme = Scheme::central4);

/// eta = (1 - |z-c|^2/r^2)^3 on the disk |z-c| < r.
struct Bump {
  cplx center = 0.0;
  double radius = 0.5;
  double value(cplx z) const;
  cplx d_z(cplx z) const;
  cplx d_zbar(cplx z) const;
};

struct WeakResidual {
  cplx value = 0.0;
  double scale = 0.0;  // sum of the moduli of the three integrands
  double relative() const { return scale > 0.0 ? std::abs(value) / scale : 0.0; }
};

/// int B1 eta_zbar + B2 eta_z - E_z eta, with B1 = h_z E_zeta + conj(h_zbar) E_xibar and
/// B2 = h_z E_xi + conj(h_zbar) E_zetabar - E. Throws Error(precondition) when the bump comes
/// within 4 delta of the boundary or covers a masked sample.
WeakResidual inner_variational_residual(const ComplexField& h, const FieldPair& dh, const EnergyDensity& density,
                                        const Bump& eta, const Domain& omega);

/// Specialized weak form of d/dzbar[2 rho h_z conj(h_zbar)] + rho_z (|h_z|^2 + |h_zbar|^2) = 0.
WeakResidual weighted_residual(const ComplexField& h, const FieldPair& dh, const WeightFn& rho, const Bump& eta,
                               const Domain& omega, const WeightDzFn& rho_z = {});

struct FConditionsReport {
  double homogeneity_defect = 0.0;  // max |F(ta,tb) - t^p F(a,b)| / t^p F(a,b), t in {1/2, 2}
  double F_lower = 0.0, F_upper = 0.0;        // min / max F / (a+b)^p
  double grad_lower = 0.0, grad_upper = 0.0;  // min (F_a+F_b) / (a+b)^{p-1}, max |grad F| / (a+b)^{p-1}
  double hess_upper = 0.0;                    // max |hess F| / (a+b)^{p-2}
  bool finite = true;
  VerificationReport report() const;
};

/// Samples on rays b/a in [1e-6, 1 - 1e-6], a + b in [1e-3, 1e3].
FConditionsReport check_F_conditions(const FFunction& F, std::size_t samples = 2000, std::uint64_t seed = 1);

/// max |a W_a + b W_b - W| / |W| with W = F / (a-b)^{p-1}.
double euler_identity_check(const FFunction& F, std::size_t samples = 1000, std::uint64_t seed = 1);

/// Phi(k) = (F_a(1,k^2) + F_b(1,k^2)) k / (1-k^2)^{p-1} and its monotone window.
struct KWindow {
  double k0 = 0.5;
  double s0 = 0.0;
  double dphi0 = 0.0;  // Phi'(0)
};
double phi_of_k(const FFunction& F, double k);
KWindow k_window(const FFunction& F);
/// Unique k in [0, k0] with Phi(k) = s. Throws Error(precondition) carrying (s0, k0) when s > s0.
double invert_k(const FFunction& F, double s);
/// conj(h_zbar) = (phi / h_z) Gamma(|phi| / |h_z|^2), Gamma(s) = k / s, Gamma(0) = 1 / Phi'(0).
cplx recover_hzbar(const FFunction& F, cplx phi, cplx hz);

/// int ((|f_z| + |f_zbar|)^2 / (|f_z|^2 - |f_zbar|^2))^p; throws Error(precondition) on J <= 0.
double distortion_energy(const FieldPair& df, double p, const Region& where);

}  // namespace innerlip
