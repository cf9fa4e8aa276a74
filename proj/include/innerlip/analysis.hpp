#pragma once

#include <cstdint>
#include <vector>

#include "innerlip/domain.hpp"
#include "innerlip/gallery.hpp"
#include "innerlip/report.hpp"
#include "innerlip/solver.hpp"

namespace innerlip {

/// g = lambda z + f - h on the unit disk and G = g / lambda.
struct DifferenceMap {
  cplx lambda = 0.0;
  ComplexField g;
  ComplexField G;
  FieldPair pair_g;
  double N = 0.0;          // ||h_zbar||_inf on the disk
  double required = 0.0;   // 4N + 4 lambda0 + R
  bool binding = true;     // |lambda| >= required
  std::string warning;
  double case1_fraction = 0.0;  // share of samples with |h_z| <= R
};

/// h and its derivatives `dh` on the grid of `good`. Throws Error(precondition) on grid mismatch.
DifferenceMap difference_map(const ComplexField& h, const FieldPair& dh, const GoodSolution& good, double lambda0,
                             double R);
/// Derivatives of h by central4.
DifferenceMap difference_map(const ComplexField& h, const GoodSolution& good, double lambda0, double R);

/// sup |g_zbar| / |g_z| over unmasked interior samples (0/0 read as 0); pass iff <= k + 0.05.
/// Also reports the Jacobian sign and the Case 1 / Case 2 split.
VerificationReport distortion_check(const DifferenceMap& dm, double k = 0.5);

double sigma(double h_sup, double hzbar_sup, double lambda0);
/// sup norms taken over the unit disk.
double sigma(const ComplexField& h, const ComplexField& h_zbar, double lambda0);

struct WindingResult {
  int degree = 0;
  double min_modulus = 0.0;
  double max_step = 0.0;
  bool certified = false;  // min_modulus >= 10 max_step
};

/// Winding of a closed sampled curve about v. Throws Error(precondition) if v lies on the curve.
WindingResult winding_number(const std::vector<cplx>& curve, cplx v);
/// curve(rho e^{i theta}) at m >= 256 equally spaced angles.
WindingResult winding_number(const PointFn& curve, double rho, cplx v, int m = 4096);

/// The family curve F(lambda_j) = lambda_j (z1 - z2) + f(z1) - f(z2) about a = h(z1) - h(z2).
WindingResult family_winding(const GoodSolutionFamily& fam, cplx z1, cplx z2, cplx a);

/// Random pairs in the disk of radius 1/3, spread over the family members.
/// A collision is |g(z1) - g(z2)| < 1e-9 |lambda| |z1 - z2|.
VerificationReport injectivity_check(const GoodSolutionFamily& fam, const PointFn& h, std::size_t pairs,
                                     std::uint64_t seed = 1, double sigma_value = 0.0);

struct LipschitzCertificate {
  cplx point = 0.0;
  double r = 0.0;              // min(dist(z, boundary), 1), or dist for the model bound
  double measured_grad = 0.0;  // |h_z| + |h_zbar|
  double bound = 0.0;
  double local_bound = 0.0;    // same bound with osc over B(z, r) (rescaled map on the unit disk)
  bool pass = false;
};

/// Gradient bound (3/r) osc + 4 ||h_zbar|| + 6 lambda0. Throws Error(hypothesis) when the structure
/// violates the Hoelder hypothesis and Error(precondition) for points closer than 4 delta to the boundary.
std::vector<LipschitzCertificate> gradient_bound_check(const ComplexField& h, const FieldPair& dh, const Domain& omega,
                                                       const StructureSpec& s, const std::vector<cplx>& points);

/// Hopf-product bound 13 osc / dist + 2 ||h_zbar|| + 3 ||phi||^{1/2}. Gates: phi analytic
/// (||phi_zbar||_2 < 1e-3 ||phi||_2) and ||h_z conj(h_zbar) - phi||_2 < 1e-3 ||phi||_2 (absolute when phi = 0).
std::vector<LipschitzCertificate> model_bound_check(const ComplexField& h, const FieldPair& dh, const ComplexField& phi,
                                                    const Domain& omega, const std::vector<cplx>& points);

VerificationReport certificates_report(const std::string& title, const std::vector<LipschitzCertificate>& certs);

/// |grad h| dist(z, boundary) at z = base + r dir for each radius (base is the boundary point).
std::vector<double> boundary_limsup(const std::function<double(cplx)>& grad_abs, const Domain& omega, cplx base, cplx dir,
                                    const std::vector<double>& radii);

/// n points inside `omega` at distance >= margin from the boundary and outside `avoid`.
std::vector<cplx> interior_points(const Domain& omega, std::size_t n, double margin, std::uint64_t seed,
                                  const Region& avoid = {});

/// Machine check of an entry's expected claims on the grid.
VerificationReport check_entry(const GalleryEntry& e, const GridSpec& grid);

}  // namespace innerlip
