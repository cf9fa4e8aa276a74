#include "innerlip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "innerlip/error.hpp"

namespace innerlip {

namespace {

std::string fmt_point(cplx z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

Check info(const std::string& name, double value, const std::string& note = {}) {
  return Check{name, value, 0.0, "flag", true, note};
}

cplx uniform_in_disk(std::mt19937_64& rng, cplx c, double r) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const cplx z(u(rng), u(rng));
    if (std::norm(z) < 1.0) return c + r * z;
  }
}

}  // namespace

DifferenceMap difference_map(const ComplexField& h, const FieldPair& dh, const GoodSolution& good, double lambda0,
                             double R) {
  const GridSpec& g = good.f.grid();
  if (!(h.grid() == g) || !(dh.d_z.grid() == g) || !(dh.d_zbar.grid() == g))
    fail(ErrorKind::precondition, "difference_map: h and the good solution live on different grids");
  DifferenceMap dm;
  dm.lambda = good.lambda;
  dm.g = ComplexField(g);
  dm.G = ComplexField(g);
  dm.pair_g = {ComplexField(g), ComplexField(g)};
  std::size_t total = 0, case1 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = g.point(i);
    const bool out = std::abs(z) >= 1.0 || h.excluded(i) || dh.d_z.excluded(i) || dh.d_zbar.excluded(i) ||
                     good.f.excluded(i) || good.f_z.excluded(i);
    if (out) {
      dm.g.exclude(i);
      dm.G.exclude(i);
      dm.pair_g.d_z.exclude(i);
      dm.pair_g.d_zbar.exclude(i);
      continue;
    }
    dm.g[i] = good.lambda * z + good.f[i] - h[i];
    dm.G[i] = dm.g[i] / good.lambda;
    dm.pair_g.d_z[i] = good.lambda + good.f_z[i] - dh.d_z[i];
    dm.pair_g.d_zbar[i] = good.omega[i] - dh.d_zbar[i];
    dm.N = std::max(dm.N, std::abs(dh.d_zbar[i]));
    ++total;
    if (std::abs(dh.d_z[i]) <= R) ++case1;
  }
  dm.case1_fraction = total ? static_cast<double>(case1) / static_cast<double>(total) : 0.0;
  dm.required = 4.0 * dm.N + 4.0 * lambda0 + R;
  dm.binding = std::abs(dm.lambda) >= dm.required;
  if (!dm.binding) {
    std::ostringstream os;
    os << "|lambda| = " << std::abs(dm.lambda) << " < 4N + 4 lambda0 + R = " << dm.required
       << "; distortion checks are non-binding";
    dm.warning = os.str();
  }
  return dm;
}

DifferenceMap difference_map(const ComplexField& h, const GoodSolution& good, double lambda0, double R) {
  return difference_map(h, wirtinger(h, Scheme::central4), good, lambda0, R);
}

VerificationReport distortion_check(const DifferenceMap& dm, double k) {
  VerificationReport rep("distortion");
  double ratio = 0.0, jmin = 0.0, jmax = 0.0;
  std::size_t count = 0;
  const ComplexField& gz = dm.pair_g.d_z;
  const ComplexField& gzb = dm.pair_g.d_zbar;
  for (std::size_t i = 0; i < gz.size(); ++i) {
    if (gz.excluded(i) || gzb.excluded(i)) continue;
    const double a = std::abs(gz[i]), b = std::abs(gzb[i]);
    const double r = b == 0.0 ? 0.0 : (a == 0.0 ? INFINITY : b / a);
    ratio = std::max(ratio, r);
    const double J = a * a - b * b;
    jmin = std::min(jmin, J);
    jmax = std::max(jmax, std::abs(J));
    ++count;
  }
  if (count == 0) fail(ErrorKind::precondition, "distortion_check: no unmasked samples");
  const std::string note = dm.binding ? std::string{} : "non-binding: " + dm.warning;
  rep.add_le("sup |g_zbar|/|g_z|", ratio, k + 0.05, note);
  rep.add_ge("min Jacobian", jmin, -1e-6 * jmax, note);
  rep.add(info("case1_fraction", dm.case1_fraction, "share of samples with |h_z| <= R"));
  rep.set_meta("lambda", format_double(dm.lambda.real()) + "," + format_double(dm.lambda.imag()));
  rep.set_meta("binding", dm.binding ? "true" : "false");
  return rep;
}

double sigma(double h_sup, double hzbar_sup, double lambda0) { return 3.0 * h_sup + 4.0 * hzbar_sup + 5.0 * lambda0; }

double sigma(const ComplexField& h, const ComplexField& h_zbar, double lambda0) {
  const Region disk = region::disk(0.0, 1.0);
  return sigma(lp_norm(h, INFINITY, disk), lp_norm(h_zbar, INFINITY, disk), lambda0);
}

WindingResult winding_number(const std::vector<cplx>& curve, cplx v) {
  if (curve.size() < 3) fail(ErrorKind::precondition, "winding_number needs at least 3 samples");
  WindingResult w;
  w.min_modulus = INFINITY;
  double total = 0.0;
  const std::size_t m = curve.size();
  for (std::size_t k = 0; k < m; ++k) {
    const cplx a = curve[k] - v, b = curve[(k + 1) % m] - v;
    const double ma = std::abs(a);
    if (ma == 0.0) fail(ErrorKind::precondition, "winding_number: point lies on the curve at sample " + std::to_string(k));
    w.min_modulus = std::min(w.min_modulus, ma);
    w.max_step = std::max(w.max_step, std::abs(b - a));
    if (std::abs(b) == 0.0) continue;  // reported on its own turn
    total += std::arg(b / a);
  }
  w.degree = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  w.certified = w.min_modulus >= 10.0 * w.max_step;
  return w;
}

WindingResult winding_number(const PointFn& curve, double rho, cplx v, int m) {
  if (m < 256) fail(ErrorKind::precondition, "winding_number needs m_samples >= 256");
  std::vector<cplx> c(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) c[static_cast<std::size_t>(k)] = curve(std::polar(rho, 2.0 * std::numbers::pi * k / m));
  return winding_number(c, v);
}

WindingResult family_winding(const GoodSolutionFamily& fam, cplx z1, cplx z2, cplx a) {
  std::vector<cplx> c;
  c.reserve(fam.solutions.size());
  for (const auto& s : fam.solutions)
    c.push_back(s.lambda * (z1 - z2) + interpolate(s.f, z1) - interpolate(s.f, z2));
  return winding_number(c, a);
}

VerificationReport injectivity_check(const GoodSolutionFamily& fam, const PointFn& h, std::size_t pairs,
                                     std::uint64_t seed, double sigma_value) {
  VerificationReport rep("injectivity");
  if (fam.solutions.empty()) fail(ErrorKind::precondition, "injectivity_check: empty family");
  std::mt19937_64 rng(seed);
  const std::size_t m = fam.solutions.size();
  const std::size_t per = (pairs + m - 1) / m;
  std::size_t collisions = 0, done = 0;
  double min_ratio = INFINITY, defect = 0.0, rho = INFINITY;
  for (const auto& s : fam.solutions) {
    rho = std::min(rho, std::abs(s.lambda));
    for (std::size_t q = 0; q < per && done < pairs; ++q, ++done) {
      const cplx z1 = uniform_in_disk(rng, 0.0, 1.0 / 3.0);
      const cplx z2 = uniform_in_disk(rng, 0.0, 1.0 / 3.0);
      const double dz = std::abs(z1 - z2);
      if (dz == 0.0) continue;
      const cplx dfh = interpolate(s.f, z1) - interpolate(s.f, z2) - (h(z1) - h(z2));
      const double dg = std::abs(s.lambda * (z1 - z2) + dfh);
      if (dg < 1e-9 * std::abs(s.lambda) * dz) ++collisions;
      min_ratio = std::min(min_ratio, dg / dz);
      defect = std::max(defect, std::abs(dfh) / dz);
    }
  }
  rep.add_le("collisions", static_cast<double>(collisions), 0.0, std::to_string(done) + " pairs");
  rep.add_ge("min |g(z1)-g(z2)|/|z1-z2|", min_ratio, 0.9 * (rho - defect), "0.9 (|lambda| - Lipschitz defect)");
  if (sigma_value > 0.0) rep.add_ge("rho", rho, sigma_value * (1.0 - 1e-12), "family radius vs sigma");
  return rep;
}

namespace {

double value_at(const ComplexField& f, cplx z, const char* what) {
  const std::size_t i = f.grid().nearest_index(z);
  if (f.excluded(i)) fail(ErrorKind::precondition, std::string(what) + ": point " + fmt_point(z) + " is masked");
  return std::abs(f[i]);
}

void check_distance(const Domain& omega, cplx z, double delta, const char* who) {
  if (!omega.contains(z) || omega.distance(z) < 4.0 * delta)
    fail(ErrorKind::precondition, std::string(who) + ": point " + fmt_point(z) + " is within 4 delta of the boundary");
}

}  // namespace

std::vector<LipschitzCertificate> gradient_bound_check(const ComplexField& h, const FieldPair& dh, const Domain& omega,
                                                       const StructureSpec& s, const std::vector<cplx>& points) {
  s.require_hypothesis("gradient_bound_check");
  const double lambda0 = lambda_zero(s, default_constants(s.alpha));
  const double delta = h.grid().spacing();
  const double osc = oscillation(h, omega.inside);
  const double N = lp_norm(dh.d_zbar, INFINITY, omega.inside);
  std::vector<LipschitzCertificate> out;
  out.reserve(points.size());
  for (cplx z : points) {
    check_distance(omega, z, delta, "gradient_bound_check");
    LipschitzCertificate c;
    c.point = z;
    c.r = std::min(omega.distance(z), 1.0);
    c.measured_grad = value_at(dh.d_z, z, "gradient_bound_check") + value_at(dh.d_zbar, z, "gradient_bound_check");
    c.bound = 3.0 / c.r * osc + 4.0 * N + 6.0 * lambda0;
    // rescaled map r^-1 h(r w + z) on the unit disk: its oscillation is osc_B(z,r)[h] / r
    const double loc = oscillation(h, region::intersect(omega.inside, region::open_disk(z, c.r)));
    c.local_bound = 3.0 / c.r * loc + 4.0 * N + 6.0 * lambda0;
    c.pass = c.measured_grad <= c.bound;
    out.push_back(c);
  }
  return out;
}

std::vector<LipschitzCertificate> model_bound_check(const ComplexField& h, const FieldPair& dh, const ComplexField& phi,
                                                    const Domain& omega, const std::vector<cplx>& points) {
  const double delta = h.grid().spacing();
  const double phi2 = lp_norm(phi, 2.0, omega.inside);
  if (phi2 > 0.0) {
    const auto dphi = wirtinger(phi, Scheme::central4);
    const double r = lp_norm(dphi.d_zbar, 2.0, omega.inside) / phi2;
    if (!(r < 1e-3)) {
      std::ostringstream os;
      os << "model_bound_check: phi fails the analyticity gate (" << r << ")";
      fail(ErrorKind::precondition, os.str());
    }
  }
  {
    ComplexField prod(h.grid());
    for (std::size_t i = 0; i < prod.size(); ++i) {
      if (dh.d_z.excluded(i) || dh.d_zbar.excluded(i) || phi.excluded(i)) {
        prod.exclude(i);
        continue;
      }
      prod[i] = dh.d_z[i] * std::conj(dh.d_zbar[i]) - phi[i];
    }
    const double res = lp_norm(prod, 2.0, omega.inside);
    if (!(res <= 1e-3 * phi2 + 1e-12)) {
      std::ostringstream os;
      os << "model_bound_check: Hopf residual " << res << " exceeds 1e-3 ||phi||_2";
      fail(ErrorKind::precondition, os.str());
    }
  }
  const double osc = oscillation(h, omega.inside);
  const double N = lp_norm(dh.d_zbar, INFINITY, omega.inside);
  const double P = std::sqrt(lp_norm(phi, INFINITY, omega.inside));
  std::vector<LipschitzCertificate> out;
  out.reserve(points.size());
  for (cplx z : points) {
    check_distance(omega, z, delta, "model_bound_check");
    LipschitzCertificate c;
    c.point = z;
    c.r = omega.distance(z);
    c.measured_grad = value_at(dh.d_z, z, "model_bound_check") + value_at(dh.d_zbar, z, "model_bound_check");
    c.bound = 13.0 * osc / c.r + 2.0 * N + 3.0 * P;
    const double loc = oscillation(h, region::intersect(omega.inside, region::open_disk(z, c.r)));
    c.local_bound = 13.0 * loc / c.r + 2.0 * N + 3.0 * P;
    c.pass = c.measured_grad <= c.bound;
    out.push_back(c);
  }
  return out;
}

VerificationReport certificates_report(const std::string& title, const std::vector<LipschitzCertificate>& certs) {
  VerificationReport rep(title);
  for (const auto& c : certs) rep.add_le("grad at " + fmt_point(c.point), c.measured_grad, c.bound,
                                         "r=" + format_double(c.r) + " local=" + format_double(c.local_bound));
  return rep;
}

std::vector<double> boundary_limsup(const std::function<double(cplx)>& grad_abs, const Domain& omega, cplx base, cplx dir,
                                    const std::vector<double>& radii) {
  if (std::abs(dir) == 0.0) fail(ErrorKind::precondition, "boundary_limsup needs a nonzero direction");
  dir /= std::abs(dir);
  for (std::size_t k = 1; k < radii.size(); ++k)
    if (!(radii[k] < radii[k - 1])) fail(ErrorKind::precondition, "boundary_limsup needs decreasing radii");
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const cplx z = base + r * dir;
    if (!omega.contains(z)) fail(ErrorKind::precondition, "boundary_limsup: " + fmt_point(z) + " is outside the domain");
    out.push_back(grad_abs(z) * omega.distance(z));
  }
  return out;
}

std::vector<cplx> interior_points(const Domain& omega, std::size_t n, double margin, std::uint64_t seed,
                                  const Region& avoid) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> pts;
  pts.reserve(n);
  for (std::size_t tries = 0; pts.size() < n; ++tries) {
    if (tries > 1000 * n + 10000) fail(ErrorKind::precondition, "interior_points: region too thin for the margin");
    const cplx z = uniform_in_disk(rng, omega.center, omega.radius);
    if (!omega.contains(z) || omega.distance(z) < margin) continue;
    if (avoid && avoid(z)) continue;
    pts.push_back(z);
  }
  return pts;
}

VerificationReport check_entry(const GalleryEntry& e, const GridSpec& grid) {
  VerificationReport rep(e.name);
  const double delta = grid.spacing();
  const Region off_cut = [&e](cplx z) { return e.singular && e.singular(z, 1e-3); };
  const auto pts = interior_points(e.domain, 50, 1e-3, 7, off_cut);

  {
    const double err = derivative_error(e, grid, 8.0 * delta);
    if (err < 0.0) rep.add_flag("central4 vs closed form", false, "no samples 8 delta away from masks; refine the grid");
    else rep.add_le("central4 vs closed form", err, 1e-4, "relative, >= 8 delta from masks");
  }

  const std::string hp = e.claim("hopf_product");
  if (!hp.empty() && e.hopf) {
    double worst = 0.0;
    for (cplx z : pts) {
      const cplx p = e.h_z(z) * std::conj(e.h_zbar(z));
      worst = std::max(worst, std::abs(p - e.hopf(z)) / std::max(1.0, std::abs(e.hopf(z))));
    }
    rep.add_le("hopf product = " + hp, worst, e.name == "halfdisk" ? 1e-8 : 1e-10);
  }
  if (e.claim("jacobian_nonneg") == "true" || e.claim("jacobian_positive") == "true") {
    const bool strict = e.claim("jacobian_positive") == "true";
    double jmin = INFINITY;
    for (cplx z : pts) jmin = std::min(jmin, std::norm(e.h_z(z)) - std::norm(e.h_zbar(z)));
    if (strict) rep.add_flag("Jacobian > 0", jmin > 0.0, format_double(jmin));
    else rep.add_ge("min Jacobian", jmin, -1e-10);
  }
  if (!e.claim("jacobian_sign_change").empty()) {
    double jmin = INFINITY;
    for (cplx z : interior_points(e.domain, 2000, 0.0, 9)) jmin = std::min(jmin, std::norm(e.h_z(z)) - std::norm(e.h_zbar(z)));
    const bool flips = jmin < 0.0;
    rep.add_flag("Jacobian sign change = " + e.claim("jacobian_sign_change"),
                 flips == (e.claim("jacobian_sign_change") == "true"), format_double(jmin));
  }
  if (e.name == "cuberoot") {
    // z^{1/3}(h_z + conj(h_zbar)) = -2 z^{1/3}... jumps across the cut
    auto w = [&e](cplx z) { return std::pow(z, 1.0 / 3.0) * (e.h_z(z) + std::conj(e.h_zbar(z))); };
    const double jump = std::abs(w(cplx(1.3, 1e-12)) - w(cplx(1.3, -1e-12)));
    rep.add_ge("C1 witness jump at |z-1|=0.3", jump, 0.1);
  }
  if (e.name == "piecewise") {
    const StructureSpec s = parse_structure(e.structure);
    rep.add_le("|H(3) - 0|", std::abs(s.H(0.0, 3.0)), 1e-14);
    rep.add_le("|H(2) - 1|", std::abs(s.H(0.0, 2.0) - 1.0), 1e-14);
    double res = 0.0;
    for (cplx z : pts) res = std::max(res, std::abs(e.h_zbar(z) - s.H(z, e.h_z(z))));
    rep.add_le("|h_zbar - H(h_z)|", res, 1e-14);
    ComplexField hfull = sample(grid, e.h);
    hfull.set_mask({});
    const double lip = lipschitz_estimate(hfull, e.domain.inside, 2.0 * delta, 3);
    rep.add_le("|lipschitz - 3|", std::abs(lip - 3.0), 1e-6);
  }
  if (e.name == "pseudo_hopf") {
    double ode = 0.0, prod = 0.0;
    for (double r : {std::exp(-5.0), 0.5, 0.1, 1e-3, 1e-8}) {
      const double t = -2.0 * std::log(r);
      const double p = pseudo_hopf::psi(t), dp = pseudo_hopf::psi_prime(t);
      ode = std::max(ode, std::abs((p - dp) * dp - 0.25));
      const cplx z = std::polar(r, 0.7);
      prod = std::max(prod, std::abs(std::abs(e.h_z(z)) * std::abs(e.h_zbar(z)) - 1.0));
    }
    rep.add_le("ODE residual (psi-psi')psi' - 1/4", ode, 1e-10);
    rep.add_le("|h_z |h_zbar| - 1|", prod, 1e-8);
    double prev = 1.0;
    bool qc = true;
    for (int k = 1; k <= 30; ++k) {
      const cplx z = std::polar(std::ldexp(1.0, -k), 0.3);
      const double d = std::abs(e.h_zbar(z)) / std::abs(e.h_z(z));
      qc = qc && d < 1.0 && d <= prev;
      prev = d;
    }
    rep.add_flag("distortion decreases toward 0", qc, format_double(prev));
  }
  if (e.claim("lipschitz") == "false") {
    std::vector<double> g;
    for (int k = 3; k <= 12; ++k) {
      const cplx z = std::polar(std::ldexp(1.0, -k), 0.3);
      g.push_back(std::abs(e.h_z(z)) + std::abs(e.h_zbar(z)));
    }
    const bool mono = std::is_sorted(g.begin(), g.end()) && std::adjacent_find(g.begin(), g.end()) == g.end();
    rep.add_flag("|grad h| increasing on r = 2^-k", mono, format_double(g.back() / g.front()));
  }
  if (e.claim("hopf_continuous") == "true") {
    std::vector<double> v;
    for (int k = 4; k <= 40; k += 2) {
      const cplx z = std::polar(std::ldexp(1.0, -k), 1.1);
      v.push_back(std::abs(e.h_z(z) * std::conj(e.h_zbar(z))));
    }
    const bool dec = std::is_sorted(v.rbegin(), v.rend());
    rep.add_flag("|Hopf product| decreases toward 0", dec && v.back() < 0.1, format_double(v.back()));
  }
  if (e.claim("hoelder_structure") == "false") {
    rep.add_flag("structure refused by the Hoelder gate", !parse_structure(e.structure).hoelder_hypothesis());
  }
  if (e.claim("bounded") == "true") {
    double m = 0.0;
    for (cplx z : interior_points(e.domain, 2000, 0.0, 11)) m = std::max(m, std::abs(e.h(z)));
    rep.add_le("sup |h|", m, 1.0 + std::cosh(std::numbers::pi / 2));
  }
  if (e.claim("boundary_limit") == "false") {
    std::vector<double> radii;
    for (int k = 3; k <= 40; ++k) radii.push_back(std::ldexp(1.0, -k));
    const auto v = boundary_limsup([&e](cplx z) { return std::abs(e.h_z(z)) + std::abs(e.h_zbar(z)); }, e.domain, 0.0,
                                   1.0, radii);
    const double tail = *std::max_element(v.begin() + static_cast<long>(v.size() / 2), v.end());
    rep.add_ge("tail max |grad h| dist toward 0", tail, 0.5, "does not tend to 0");
  }
  return rep;
}

}  // namespace innerlip
