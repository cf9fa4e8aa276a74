#include "innerlip/energies.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <random>
#include <sstream>

#include "innerlip/error.hpp"
#include "innerlip/kernels.hpp"
#include "innerlip/structure.hpp"

namespace innerlip {

// ---------------------------------------------------------------- F functions

namespace ffunc {

FFunction power_sum(double q, double p) {
  if (p < 0.0) p = q;
  if (!(p >= 1.0)) fail(ErrorKind::precondition, "power_sum needs p >= 1");
  FFunction f;
  std::ostringstream os;
  os << "power_sum:p=" << p;
  if (q != p) os << ",degree=" << q;
  f.name = os.str();
  f.p = p;
  f.F = [q](double a, double b) { return std::pow(a + b, q); };
  f.Fa = f.Fb = [q](double a, double b) { return q * std::pow(a + b, q - 1.0); };
  f.Faa = f.Fab = f.Fbb = [q](double a, double b) { return q * (q - 1.0) * std::pow(a + b, q - 2.0); };
  return f;
}

FFunction product() {
  FFunction f;
  f.name = "product";
  f.p = 2.0;
  f.F = [](double a, double b) { return a * b; };
  f.Fa = [](double, double b) { return b; };
  f.Fb = [](double a, double) { return a; };
  f.Faa = f.Fbb = [](double, double) { return 0.0; };
  f.Fab = [](double, double) { return 1.0; };
  return f;
}

namespace {

// natural cubic spline on [0, 1/2] with equally spaced nodes
struct Spline {
  std::vector<double> y, m;  // values and second derivatives
  double h = 0.0;

  explicit Spline(std::vector<double> v) : y(std::move(v)) {
    const std::size_t n = y.size();
    h = 0.5 / static_cast<double>(n - 1);
    m.assign(n, 0.0);
    if (n < 3) return;
    // tridiagonal system for interior second derivatives (Thomas algorithm)
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double rhs = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
      const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
      c[i] = 1.0 / denom;
      d[i] = (rhs - (i > 1 ? d[i - 1] : 0.0)) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m[i] = d[i] - c[i] * m[i + 1];
      if (i == 1) break;
    }
  }

  // value, first and second derivative
  std::array<double, 3> eval(double t) const {
    t = std::clamp(t, 0.0, 0.5);
    std::size_t i = std::min(static_cast<std::size_t>(t / h), y.size() - 2);
    const double A = (h * static_cast<double>(i + 1) - t) / h, B = 1.0 - A;
    const double v = A * y[i] + B * y[i + 1] + ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
    const double d1 = (y[i + 1] - y[i]) / h - (3.0 * A * A - 1.0) / 6.0 * h * m[i] + (3.0 * B * B - 1.0) / 6.0 * h * m[i + 1];
    const double d2 = A * m[i] + B * m[i + 1];
    return {v, d1, d2};
  }
};

}  // namespace

FFunction tabulated(double p, std::vector<double> profile) {
  if (!(p >= 1.0)) fail(ErrorKind::precondition, "tabulated F needs p >= 1");
  if (profile.size() < 2) fail(ErrorKind::precondition, "tabulated F needs at least 2 profile values");
  for (double g : profile)
    if (!(g > 0.0) || !std::isfinite(g)) fail(ErrorKind::precondition, "tabulated F profile must be positive");
  auto sp = std::make_shared<Spline>(std::move(profile));
  FFunction f;
  std::ostringstream os;
  os << "table:p=" << p << ",g=";
  for (std::size_t i = 0; i < sp->y.size(); ++i) os << (i ? ";" : "") << sp->y[i];
  f.name = os.str();
  f.p = p;
  // F = S^p g(t), S = a + b, t = b / S
  f.F = [sp, p](double a, double b) {
    const double S = a + b;
    return S > 0.0 ? std::pow(S, p) * sp->eval(b / S)[0] : 0.0;
  };
  f.Fa = [sp, p](double a, double b) {
    const double S = a + b, t = b / S;
    const auto g = sp->eval(t);
    return p * std::pow(S, p - 1.0) * g[0] + std::pow(S, p) * g[1] * (-b / (S * S));
  };
  f.Fb = [sp, p](double a, double b) {
    const double S = a + b, t = b / S;
    const auto g = sp->eval(t);
    return p * std::pow(S, p - 1.0) * g[0] + std::pow(S, p) * g[1] * (a / (S * S));
  };
  auto second = [sp, p](double a, double b, int which) {
    const double S = a + b, t = b / S;
    const auto g = sp->eval(t);
    const double ta = -b / (S * S), tb = a / (S * S);
    const double taa = 2.0 * b / (S * S * S), tab = (b - a) / (S * S * S), tbb = -2.0 * a / (S * S * S);
    const double base = p * (p - 1.0) * std::pow(S, p - 2.0) * g[0];
    const double Sp1 = p * std::pow(S, p - 1.0), Sp = std::pow(S, p);
    switch (which) {
      case 0: return base + 2.0 * Sp1 * g[1] * ta + Sp * (g[2] * ta * ta + g[1] * taa);
      case 1: return base + Sp1 * g[1] * (ta + tb) + Sp * (g[2] * ta * tb + g[1] * tab);
      default: return base + 2.0 * Sp1 * g[1] * tb + Sp * (g[2] * tb * tb + g[1] * tbb);
    }
  };
  f.Faa = [second](double a, double b) { return second(a, b, 0); };
  f.Fab = [second](double a, double b) { return second(a, b, 1); };
  f.Fbb = [second](double a, double b) { return second(a, b, 2); };
  return f;
}

FFunction parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorKind::usage, "F parameter '" + item + "' needs key=value");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto num = [&](const std::string& k, double def) {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    try {
      return std::stod(it->second);
    } catch (...) {
      fail(ErrorKind::usage, "F parameter " + k + " is not a number: " + it->second);
    }
  };
  if (kind == "nonisotropic" || kv.count("c") || kv.count("eps"))
    fail(ErrorKind::usage, "three-variable F(a,b,c) energies are out of scope; use an isotropic F(a,b)");
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : kv)
      if (std::none_of(keys.begin(), keys.end(), [&k](const char* a) { return k == a; }))
        fail(ErrorKind::usage, "unknown parameter '" + k + "' for F '" + kind + "'");
  };
  if (kind == "power_sum") {
    allow({"p", "degree"});
    return power_sum(num("degree", num("p", 2.0)), num("p", 2.0));
  }
  if (kind == "product") {
    allow({});
    return product();
  }
  if (kind == "table") {
    allow({"p", "g"});
    std::vector<double> g;
    std::stringstream ss(kv.count("g") ? kv["g"] : "");
    std::string item;
    while (std::getline(ss, item, ';')) {
      try {
        g.push_back(std::stod(item));
      } catch (...) {
        fail(ErrorKind::usage, "table profile entry is not a number: " + item);
      }
    }
    return tabulated(num("p", 2.0), std::move(g));
  }
  fail(ErrorKind::usage, "unknown F '" + text + "' (known: power_sum:p=, product, table:p=,g=)");
}

}  // namespace ffunc

// ---------------------------------------------------------------- densities

EnergyDensity EnergyDensity::dirichlet() { return EnergyDensity{}; }

EnergyDensity EnergyDensity::weighted(WeightFn rho, WeightDzFn rho_z) {
  EnergyDensity d;
  d.kind = Kind::weighted;
  d.rho = std::move(rho);
  d.rho_z = std::move(rho_z);
  return d;
}

EnergyDensity EnergyDensity::neo_hookean(FFunction F) {
  if (!(F.p >= 1.0)) fail(ErrorKind::precondition, "neo-Hookean density needs p >= 1");
  EnergyDensity d;
  d.kind = Kind::neo_hookean;
  d.F = std::move(F);
  return d;
}

double EnergyDensity::value(cplx z, cplx w, double a, double b) const {
  switch (kind) {
    case Kind::dirichlet: return 2.0 * (a + b);
    case Kind::weighted: return rho(z, w) * (a + b);
    case Kind::neo_hookean: return F.F(a, b) / std::pow(a - b, F.p - 1.0);
  }
  return 0.0;
}

std::pair<double, double> EnergyDensity::gradient(cplx z, cplx w, double a, double b) const {
  switch (kind) {
    case Kind::dirichlet: return {2.0, 2.0};
    case Kind::weighted: {
      const double r = rho(z, w);
      return {r, r};
    }
    case Kind::neo_hookean: {
      const double J = a - b, p = F.p;
      const double Jp = std::pow(J, p - 1.0), f = F.F(a, b);
      const double corr = (p - 1.0) * f / (Jp * J);
      return {F.Fa(a, b) / Jp - corr, F.Fb(a, b) / Jp + corr};
    }
  }
  return {0.0, 0.0};
}

namespace {
cplx weight_dz(const WeightFn& rho, const WeightDzFn& rho_z, cplx z, cplx w) {
  if (rho_z) return rho_z(z, w);
  const double e = 1e-6;
  const double dx = (rho(z + e, w) - rho(z - e, w)) / (2.0 * e);
  const double dy = (rho(z + cplx(0, e), w) - rho(z - cplx(0, e), w)) / (2.0 * e);
  return 0.5 * cplx(dx, -dy);
}
}  // namespace

cplx EnergyDensity::partial_z(cplx z, cplx w, double a, double b) const {
  if (kind != Kind::weighted) return 0.0;
  return weight_dz(rho, rho_z, z, w) * (a + b);
}

double energy(const FieldPair& dh, const EnergyDensity& density, const Region& where, const ComplexField* h) {
  const GridSpec& g = dh.d_z.grid();
  if (density.kind == EnergyDensity::Kind::weighted && !h)
    fail(ErrorKind::precondition, "weighted energy needs the map h");
  const double area = g.spacing() * g.spacing();
  double total = 0.0;
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = g.point(i);
    if (!where(z) || dh.d_z.excluded(i) || dh.d_zbar.excluded(i)) continue;
    const double a = std::norm(dh.d_z[i]), b = std::norm(dh.d_zbar[i]);
    if (density.kind == EnergyDensity::Kind::neo_hookean && !(a - b > 1e-12)) {
      bad.push_back(i);
      continue;
    }
    total += density.value(z, h ? (*h)[i] : cplx(0.0), a, b);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "neo-Hookean energy: Jacobian <= 1e-12 at " << bad.size() << " samples, e.g.";
    for (std::size_t k = 0; k < std::min<std::size_t>(bad.size(), 5); ++k) {
      const cplx z = g.point(bad[k]);
      os << " (" << z.real() << ", " << z.imag() << ")";
    }
    fail(ErrorKind::precondition, os.str());
  }
  return total * area;
}

ComplexField hopf_product(const FieldPair& dh) {
  ComplexField out(dh.d_z.grid());
  kernels::cmul_conj(dh.d_z.values(), dh.d_zbar.values(), out.values());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (dh.d_z.excluded(i) || dh.d_zbar.excluded(i)) out.exclude(i);
  return out;
}

double analyticity_residual(const ComplexField& field, const Region& where, Scheme scheme) {
  const auto d = wirtinger(field, scheme);
  // compare on the samples where the derivative exists
  ComplexField f = field;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (d.d_zbar.excluded(i)) f.exclude(i);
  return lp_norm(d.d_zbar, 2.0, where) / std::max(lp_norm(f, 2.0, where), 1e-30);
}

// ---------------------------------------------------------------- weak forms

double Bump::value(cplx z) const {
  const double q = std::norm(z - center) / (radius * radius);
  return q < 1.0 ? (1.0 - q) * (1.0 - q) * (1.0 - q) : 0.0;
}

cplx Bump::d_zbar(cplx z) const {
  const double q = std::norm(z - center) / (radius * radius);
  if (q >= 1.0) return 0.0;
  return -3.0 * (1.0 - q) * (1.0 - q) * (z - center) / (radius * radius);
}

cplx Bump::d_z(cplx z) const { return std::conj(d_zbar(z)); }

namespace {

template <class Integrand>
WeakResidual weak_sum(const ComplexField& h, const FieldPair& dh, const Bump& eta, const Domain& omega,
                      const char* who, Integrand term) {
  const GridSpec& g = h.grid();
  const double delta = g.spacing();
  if (!(eta.radius > 0.0)) fail(ErrorKind::precondition, std::string(who) + ": bump radius must be positive");
  if (!omega.contains(eta.center) || omega.distance(eta.center) < eta.radius + 4.0 * delta)
    fail(ErrorKind::precondition, std::string(who) + ": test function support comes within 4 delta of the boundary");
  WeakResidual r;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = g.point(i);
    if (std::abs(z - eta.center) >= eta.radius) continue;
    if (h.excluded(i) || dh.d_z.excluded(i) || dh.d_zbar.excluded(i)) {
      std::ostringstream os;
      os << who << ": masked sample (" << z.real() << ", " << z.imag() << ") inside the test-function support";
      fail(ErrorKind::precondition, os.str());
    }
    const auto [t1, t2, t3] = term(z, h[i], dh.d_z[i], dh.d_zbar[i]);
    r.value += t1 + t2 - t3;
    r.scale += std::abs(t1) + std::abs(t2) + std::abs(t3);
  }
  r.value *= delta * delta;
  r.scale *= delta * delta;
  return r;
}

}  // namespace

WeakResidual inner_variational_residual(const ComplexField& h, const FieldPair& dh, const EnergyDensity& density,
                                        const Bump& eta, const Domain& omega) {
  return weak_sum(h, dh, eta, omega, "inner_variational_residual", [&](cplx z, cplx w, cplx xi, cplx zeta) {
    const double a = std::norm(xi), b = std::norm(zeta);
    if (density.kind == EnergyDensity::Kind::neo_hookean && !(a - b > 1e-12))
      fail(ErrorKind::precondition, "inner_variational_residual: degenerate Jacobian in the support");
    const auto [Ea, Eb] = density.gradient(z, w, a, b);
    const cplx B1 = (Ea + Eb) * xi * std::conj(zeta);
    const cplx B2 = a * Ea + b * Eb - density.value(z, w, a, b);
    return std::array<cplx, 3>{B1 * eta.d_zbar(z), B2 * eta.d_z(z), density.partial_z(z, w, a, b) * eta.value(z)};
  });
}

WeakResidual weighted_residual(const ComplexField& h, const FieldPair& dh, const WeightFn& rho, const Bump& eta,
                               const Domain& omega, const WeightDzFn& rho_z) {
  return weak_sum(h, dh, eta, omega, "weighted_residual", [&](cplx z, cplx w, cplx xi, cplx zeta) {
    const cplx U = 2.0 * rho(z, w) * xi * std::conj(zeta);
    const cplx u = weight_dz(rho, rho_z, z, w) * (std::norm(xi) + std::norm(zeta));
    return std::array<cplx, 3>{U * eta.d_zbar(z), cplx(0.0), u * eta.value(z)};
  });
}

// ---------------------------------------------------------------- F conditions

VerificationReport FConditionsReport::report() const {
  VerificationReport rep("F conditions");
  rep.add_flag("finite on samples", finite);
  rep.add_le("homogeneity defect", homogeneity_defect, 1e-10);
  rep.add_ge("F / (a+b)^p lower", F_lower, 1e-3);
  rep.add_le("F / (a+b)^p upper", F_upper, 1e3);
  rep.add_ge("(F_a+F_b) / (a+b)^(p-1) lower", grad_lower, 1e-3);
  rep.add_le("|grad F| / (a+b)^(p-1) upper", grad_upper, 1e3);
  rep.add_le("|hess F| / (a+b)^(p-2) upper", hess_upper, 1e3);
  return rep;
}

namespace {
// (a, b) with b/a log-uniform in [1e-6, 1) and a + b log-uniform in [1e-3, 1e3]
std::pair<double, double> sample_ab(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double ratio = std::min(std::pow(10.0, -6.0 * u(rng)), 1.0 - 1e-6);
  const double S = std::pow(10.0, -3.0 + 6.0 * u(rng));
  return {S / (1.0 + ratio), ratio * S / (1.0 + ratio)};
}
}  // namespace

FConditionsReport check_F_conditions(const FFunction& F, std::size_t samples, std::uint64_t seed) {
  FConditionsReport r;
  r.F_lower = r.grad_lower = INFINITY;
  std::mt19937_64 rng(seed);
  const double p = F.p;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto [a, b] = sample_ab(rng);
    const double S = a + b, f = F.F(a, b);
    for (double t : {0.5, 2.0}) {
      const double ref = std::pow(t, p) * f;
      r.homogeneity_defect = std::max(r.homogeneity_defect, std::abs(F.F(t * a, t * b) - ref) / std::abs(ref));
    }
    const double fa = F.Fa(a, b), fb = F.Fb(a, b);
    const double hess = std::abs(F.Faa(a, b)) + std::abs(F.Fab(a, b)) + std::abs(F.Fbb(a, b));
    const double q0 = f / std::pow(S, p), q1 = (fa + fb) / std::pow(S, p - 1.0);
    const double q2 = (std::abs(fa) + std::abs(fb)) / std::pow(S, p - 1.0), q3 = hess / std::pow(S, p - 2.0);
    r.finite = r.finite && std::isfinite(q0) && std::isfinite(q1) && std::isfinite(q2) && std::isfinite(q3);
    r.F_lower = std::min(r.F_lower, q0);
    r.F_upper = std::max(r.F_upper, q0);
    r.grad_lower = std::min(r.grad_lower, q1);
    r.grad_upper = std::max(r.grad_upper, q2);
    r.hess_upper = std::max(r.hess_upper, q3);
  }
  return r;
}

double euler_identity_check(const FFunction& F, std::size_t samples, std::uint64_t seed) {
  const EnergyDensity d = EnergyDensity::neo_hookean(F);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto [a, b] = sample_ab(rng);
    const double W = d.value(0.0, 0.0, a, b);
    const auto [Wa, Wb] = d.gradient(0.0, 0.0, a, b);
    worst = std::max(worst, std::abs(a * Wa + b * Wb - W) / std::abs(W));
  }
  return worst;
}

// ---------------------------------------------------------------- k = s Gamma(s)

double phi_of_k(const FFunction& F, double k) {
  const double k2 = k * k;
  return (F.Fa(1.0, k2) + F.Fb(1.0, k2)) * k / std::pow(1.0 - k2, F.p - 1.0);
}

KWindow k_window(const FFunction& F) {
  KWindow w;
  w.dphi0 = F.Fa(1.0, 0.0) + F.Fb(1.0, 0.0);
  if (!(w.dphi0 > 0.0)) {
    std::ostringstream os;
    os << "invert_k needs Phi'(0) = F_a(1,0) + F_b(1,0) > 0, got " << w.dphi0;
    fail(ErrorKind::precondition, os.str());
  }
  constexpr int steps = 4096;
  double prev = 0.0;
  w.k0 = 0.5;
  for (int i = 1; i <= steps; ++i) {
    const double k = 0.5 * i / steps;
    const double v = phi_of_k(F, k);
    if (!(v > prev)) {
      w.k0 = 0.5 * (i - 1) / steps;
      break;
    }
    prev = v;
  }
  w.s0 = phi_of_k(F, w.k0);
  return w;
}

double invert_k(const FFunction& F, double s) {
  if (!(s >= 0.0)) fail(ErrorKind::precondition, "invert_k needs s >= 0");
  const KWindow w = k_window(F);
  if (s > w.s0) {
    std::ostringstream os;
    os << "invert_k: s = " << s << " exceeds the monotone window s0 = " << w.s0 << " (k0 = " << w.k0 << ")";
    fail(ErrorKind::precondition, os.str());
  }
  if (s == 0.0) return 0.0;
  double lo = 0.0, hi = w.k0, k = std::min(s / w.dphi0, hi);
  for (int it = 0; it < 200; ++it) {
    const double f = phi_of_k(F, k) - s;
    if (f == 0.0) return k;
    if (f > 0.0) hi = k;
    else lo = k;
    const double e = 1e-7 * std::max(k, 1e-12);
    const double df = (phi_of_k(F, k + e) - phi_of_k(F, k - e)) / (2.0 * e);
    double next = df > 0.0 ? k - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - k) <= 1e-15 * std::max(k, 1e-300) || hi - lo <= 1e-16 * hi) return next;
    k = next;
  }
  return k;
}

cplx recover_hzbar(const FFunction& F, cplx phi, cplx hz) {
  if (phi == 0.0) return 0.0;
  if (hz == 0.0) fail(ErrorKind::precondition, "recover_hzbar needs h_z != 0");
  const KWindow w = k_window(F);
  const double s = std::abs(phi) / std::norm(hz);
  if (s > w.s0) {
    std::ostringstream os;
    os << "recover_hzbar: |h_z|^2 = " << std::norm(hz) << " < |phi| / s0 = " << std::abs(phi) / w.s0;
    fail(ErrorKind::precondition, os.str());
  }
  const double k = invert_k(F, s);
  const double gamma = s > 0.0 ? k / s : 1.0 / w.dphi0;
  return std::conj(phi / hz * gamma);
}

double distortion_energy(const FieldPair& df, double p, const Region& where) {
  const GridSpec& g = df.d_z.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = g.point(i);
    if (!where(z) || df.d_z.excluded(i) || df.d_zbar.excluded(i)) continue;
    const double a = std::abs(df.d_z[i]), b = std::abs(df.d_zbar[i]);
    const double J = a * a - b * b;
    if (!(J > 0.0)) {
      std::ostringstream os;
      os << "distortion_energy: Jacobian " << J << " <= 0 at (" << z.real() << ", " << z.imag() << ")";
      fail(ErrorKind::precondition, os.str());
    }
    total += std::pow((a + b) * (a + b) / J, p);
  }
  return total * g.spacing() * g.spacing();
}

}  // namespace innerlip
