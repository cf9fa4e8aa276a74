#pragma once

#include <vector>

#include "innerlip/report.hpp"
#include "innerlip/structure.hpp"
#include "innerlip/transforms.hpp"

namespace innerlip {

struct SolverConfig {
  GridSpec grid{4.0, 256};
  /// Fixed-point step target in discrete L^p; <= 0 selects 1e-8 * M * |2D|^{1/p}.
  double tol = 0.0;
  int max_iter = 60;
  cplx lambda = 0.0;
  /// p = 3 / alpha of the structure unless set (> 0) here.
  double p = 0.0;
  TransformOptions transform{};
};

struct GoodSolution {
  cplx lambda = 0.0;
  ComplexField omega;  // f_zbar, supported in the disk of radius 2
  ComplexField f;      // Cauchy transform of omega, f(0) = 0
  ComplexField f_z;    // Beurling transform of omega
  int iterations = 0;
  double residual = 0.0;  // ||omega - T omega||_p
  double tol = 0.0;
  double p = 3.0;
  std::vector<double> step_norms;         // ||w_{k+1} - w_k||_p
  std::vector<double> contraction_rates;  // step_norms[k] / step_norms[k-1]
  double max_rate() const;
};

struct GoodSolutionFamily {
  double rho = 0.0;
  double lambda0 = 0.0;
  std::vector<GoodSolution> solutions;  // lambda_j = rho e^{2 pi i j / m}
  /// max over adjacent pairs of sup_D |f1 - f2| / (lambda0 |l1 - l2| / |l1 l2|).
  double continuity_ratio = 0.0;
};

/// T w = H(z, lambda + S w), supported in the disk of radius 2.
/// Throws Error(precondition) if sup_{2D} |S w| > |lambda|/2 or |lambda + S w| <= R at a sample.
ComplexField iterate_T(const ExtendedStructure& ext, cplx lambda, const ComplexField& omega,
                       const TransformOptions& opt = {});

/// Default step tolerance 1e-8 * M * |2D|^{1/p} (floored at 1e-15).
double default_tolerance(const StructureSpec& s, double p);

/// Banach iteration from w_0 = 0 (or `start`) until the step drops below tol.
/// Throws Error(convergence) with the rate history when max_iter is reached.
GoodSolution solve_good(const ExtendedStructure& ext, const SolverConfig& config,
                        const ComplexField* start = nullptr);

/// Members at m equally spaced points of |lambda| = rho. Throws naming the failing lambda_j.
GoodSolutionFamily solve_family(const ExtendedStructure& ext, double rho, int m, double lambda0,
                                const SolverConfig& base);

/// F(z) = lambda z + conj(Phi(z) / lambda) on the unit disk (samples outside are excluded).
ComplexField model_good_solution(const ComplexField& Phi, cplx lambda);

/// Radial integral Phi(z) = int_0^1 phi(tz) z dt on dyadic panels [2^-(j+1), 2^-j] with
/// 12-point Gauss-Legendre per panel. Samples outside `domain` are excluded.
ComplexField antiderivative(const GridSpec& grid, const PointFn& phi, const Region& domain);
/// Field version: phi is interpolated bicubically; guarded by the analyticity gate
/// ||phi_zbar||_2 / ||phi||_2 < 1e-3 on the interior of the unit disk.
ComplexField antiderivative(const ComplexField& phi);

/// A-posteriori checks on a converged solution: residual, rates, f(0) = 0, Besov ball,
/// gradient and modulus bounds, Lipschitz constant on the unit disk.
VerificationReport good_solution_report(const GoodSolution& sol, const StructureSpec& s, double lambda0);
/// Member reports plus the lambda-continuity ratio (<= 1.2).
VerificationReport family_report(const GoodSolutionFamily& fam, const StructureSpec& s);

}  // namespace innerlip
