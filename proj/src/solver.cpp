#include "innerlip/solver.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "innerlip/error.hpp"
#include "innerlip/kernels.hpp"

namespace innerlip {

double GoodSolution::max_rate() const {
  double m = 0.0;
  for (std::size_t k = 1; k < contraction_rates.size(); ++k) m = std::max(m, contraction_rates[k]);
  return m;
}

ComplexField iterate_T(const ExtendedStructure& ext, cplx lambda, const ComplexField& omega,
                       const TransformOptions& opt) {
  const GridSpec& g = omega.grid();
  const ComplexField s = beurling(omega, opt);
  ComplexField out(g);
  const double half = 0.5 * std::abs(lambda);
  const double R = ext.base.R;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = g.point(i);
    if (std::abs(z) >= 2.0) continue;
    if (std::abs(s[i]) > half) {
      std::ostringstream os;
      os << "|S w| = " << std::abs(s[i]) << " exceeds |lambda|/2 = " << half << " at z = (" << z.real() << ", "
         << z.imag() << ")";
      fail(ErrorKind::precondition, os.str());
    }
    const cplx xi = lambda + s[i];
    if (std::abs(xi) <= R) {
      std::ostringstream os;
      os << "|lambda + S w| = " << std::abs(xi) << " <= R = " << R << " at z = (" << z.real() << ", " << z.imag()
         << ")";
      fail(ErrorKind::precondition, os.str());
    }
    out[i] = ext(z, xi);
  }
  out.set_supported_in_2D_unchecked(true);
  return out;
}

double default_tolerance(const StructureSpec& s, double p) {
  return std::max(1e-8 * s.M * std::pow(4.0 * std::numbers::pi, 1.0 / p), 1e-15);
}

namespace {

double step_norm(const ComplexField& a, const ComplexField& b, double p) {
  return lp_norm(subtract(a, b), p);
}

}  // namespace

GoodSolution solve_good(const ExtendedStructure& ext, const SolverConfig& cfg, const ComplexField* start) {
  cfg.grid.validate();
  if (cfg.grid.half_width < 4.0) fail(ErrorKind::precondition, "solver needs a box half-width A >= 4");
  if (cfg.lambda == 0.0) fail(ErrorKind::precondition, "solver needs lambda != 0");
  GoodSolution sol;
  sol.lambda = cfg.lambda;
  sol.p = cfg.p > 0.0 ? cfg.p : 3.0 / ext.base.alpha;
  sol.tol = cfg.tol > 0.0 ? cfg.tol : default_tolerance(ext.base, sol.p);

  ComplexField w(cfg.grid);
  w.set_supported_in_2D_unchecked(true);
  if (start) {
    if (!(start->grid() == cfg.grid)) fail(ErrorKind::precondition, "initial density is on a different grid");
    w = *start;
    w.mark_supported_in_2D();
  }
  bool converged = false;
  for (int k = 0; k < cfg.max_iter; ++k) {
    ComplexField next = iterate_T(ext, cfg.lambda, w, cfg.transform);
    const double step = step_norm(next, w, sol.p);
    if (!sol.step_norms.empty()) {
      const double prev = sol.step_norms.back();
      sol.contraction_rates.push_back(prev > 0.0 ? step / prev : 0.0);
    }
    sol.step_norms.push_back(step);
    w = std::move(next);
    sol.iterations = k + 1;
    if (step <= sol.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "no convergence after " << cfg.max_iter << " iterations (last step " << sol.step_norms.back()
       << ", tol " << sol.tol << "); rates:";
    for (double r : sol.contraction_rates) os << ' ' << r;
    fail(ErrorKind::convergence, os.str());
  }
  sol.residual = step_norm(iterate_T(ext, cfg.lambda, w, cfg.transform), w, sol.p);
  sol.f_z = beurling(w, cfg.transform);
  sol.f = cauchy(w, cfg.transform);
  sol.omega = std::move(w);
  return sol;
}

GoodSolutionFamily solve_family(const ExtendedStructure& ext, double rho, int m, double lambda0,
                                const SolverConfig& base) {
  if (m < 8) fail(ErrorKind::precondition, "solve_family needs m >= 8");
  if (rho < lambda0) fail(ErrorKind::precondition, "solve_family needs rho >= lambda0");
  GoodSolutionFamily fam;
  fam.rho = rho;
  fam.lambda0 = lambda0;
  fam.solutions.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    SolverConfig cfg = base;
    cfg.lambda = std::polar(rho, 2.0 * std::numbers::pi * j / m);
    try {
      fam.solutions.push_back(solve_good(ext, cfg));
    } catch (const Error& e) {
      std::ostringstream os;
      os << "family member j=" << j << " lambda=(" << cfg.lambda.real() << ", " << cfg.lambda.imag()
         << "): " << e.what();
      throw Error(e.kind(), os.str());
    }
  }
  const Region disk = region::disk(0.0, 1.0);
  for (int j = 0; j < m; ++j) {
    const GoodSolution& a = fam.solutions[static_cast<std::size_t>(j)];
    const GoodSolution& b = fam.solutions[static_cast<std::size_t>((j + 1) % m)];
    const double bound = lambda0 * std::abs(a.lambda - b.lambda) / std::abs(a.lambda * b.lambda);
    const double diff = lp_norm(subtract(a.f, b.f), INFINITY, disk);
    fam.continuity_ratio = std::max(fam.continuity_ratio, diff / bound);
  }
  return fam;
}

ComplexField model_good_solution(const ComplexField& Phi, cplx lambda) {
  if (lambda == 0.0) fail(ErrorKind::precondition, "model_good_solution needs lambda != 0");
  const GridSpec& g = Phi.grid();
  if (std::abs(Phi[g.origin_index()]) > 1e-10 * std::max(1.0, Phi.max_abs()))
    fail(ErrorKind::precondition, "model_good_solution needs Phi(0) = 0");
  if (Phi.max_abs() > 0.0) {
    const auto d = wirtinger(Phi, Scheme::central4);
    const Region inner = region::disk(0.0, 0.9);
    const double num = lp_norm(d.d_zbar, 2.0, inner), den = lp_norm(d.d_z, 2.0, inner);
    if (num > 1e-3 * den) fail(ErrorKind::precondition, "model_good_solution: Phi fails the analyticity gate");
  }
  ComplexField F(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = g.point(i);
    if (std::abs(z) > 1.0 || Phi.excluded(i)) {
      F.exclude(i);
      continue;
    }
    F[i] = lambda * z + std::conj(Phi[i] / lambda);
  }
  return F;
}

namespace {

struct GaussRule {
  std::array<double, 12> x{}, w{};
};

// Legendre nodes on [0, 1] by Newton iteration
const GaussRule& gauss12() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = 12;
    for (int i = 0; i < n; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      r.x[i] = 0.5 * (1.0 - t);
      r.w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
  }();
  return rule;
}

cplx radial_integral(const PointFn& phi, cplx z) {
  if (z == 0.0) return 0.0;
  constexpr int panels = 44;
  const GaussRule& g = gauss12();
  cplx total = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double b = std::ldexp(1.0, -j), a = 0.5 * b;
    cplx s = 0.0;
    for (std::size_t q = 0; q < g.x.size(); ++q) s += g.w[q] * phi((a + (b - a) * g.x[q]) * z);
    total += s * (b - a);
  }
  return total * z;
}

}  // namespace

ComplexField antiderivative(const GridSpec& grid, const PointFn& phi, const Region& domain) {
  grid.validate();
  ComplexField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx z = grid.point(i);
    if (!domain(z)) {
      out.exclude(i);
      continue;
    }
    out[i] = radial_integral(phi, z);
  }
  return out;
}

ComplexField antiderivative(const ComplexField& phi) {
  const Region inner = region::disk(0.0, 0.95);
  const auto d = wirtinger(phi, Scheme::central4);
  const double den = lp_norm(phi, 2.0, inner);
  if (den > 0.0 && lp_norm(d.d_zbar, 2.0, inner) >= 1e-3 * den)
    fail(ErrorKind::precondition, "antiderivative: phi fails the analyticity gate");
  const PointFn f = [&phi](cplx z) { return interpolate(phi, z); };
  return antiderivative(phi.grid(), f, region::disk(0.0, 1.0));
}

VerificationReport good_solution_report(const GoodSolution& sol, const StructureSpec& s, double lambda0) {
  std::ostringstream title;
  title << "good solution lambda=(" << sol.lambda.real() << "," << sol.lambda.imag() << ")";
  VerificationReport rep(title.str());
  const GridSpec& g = sol.f.grid();
  const Region disk = region::disk(0.0, 1.0);
  rep.add_le("residual", sol.residual, sol.tol);
  rep.add_le("max contraction rate after step 1", sol.max_rate(), 0.55);
  rep.add_le("|f(0)| / max|f|", std::abs(sol.f[g.origin_index()]) / std::max(sol.f.max_abs(), 1e-300), 1e-10);
  if (s.hoelder_hypothesis()) {
    const double b = besov_estimate(sol.omega, s.alpha, sol.p).total();
    rep.add_le("||omega||_{alpha,p}", b, 60.0 * s.M * 1.1, "ball radius 60 M, 10% slack");
  }
  double grad = 0.0, modmin = INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = g.point(i);
    if (std::abs(z) <= 1.0) grad = std::max(grad, std::abs(sol.f_z[i]) + std::abs(sol.omega[i]));
    if (std::abs(z) < 2.0) modmin = std::min(modmin, std::abs(sol.lambda + sol.f_z[i]));
  }
  rep.add_le("||grad f||_inf", grad, lambda0 * 1.1);
  rep.add_le("||f_z||_inf", lp_norm(sol.f_z, INFINITY, disk), 0.5 * lambda0 * 1.1);
  rep.add_le("||f_zbar||_inf", lp_norm(sol.omega, INFINITY, disk), 0.5 * lambda0 * 1.1);
  rep.add_ge("min |lambda + f_z| on 2D", modmin, 0.5 * std::abs(sol.lambda) * 0.9);
  rep.add_le("lipschitz(f) on D", lipschitz_estimate(sol.f, disk, 2.0 * g.spacing(), 1), lambda0 * 1.1);
  rep.add_le("sup |f| on D", lp_norm(sol.f, INFINITY, disk), lambda0 * (1.0 - 1e-12));
  return rep;
}

VerificationReport family_report(const GoodSolutionFamily& fam, const StructureSpec& s) {
  VerificationReport rep("family");
  rep.set_meta("rho", format_double(fam.rho));
  rep.set_meta("lambda0", format_double(fam.lambda0));
  for (std::size_t j = 0; j < fam.solutions.size(); ++j) {
    VerificationReport member("member " + std::to_string(j));
    const auto sub = good_solution_report(fam.solutions[j], s, fam.lambda0);
    for (const Check& c : sub.checks()) member.add(c);
    rep.merge(member);
  }
  rep.add_le("lambda-continuity ratio", fam.continuity_ratio, 1.2, "sup|f1-f2| / (lambda0 |l1-l2| / |l1 l2|)");
  return rep;
}

}  // namespace innerlip
