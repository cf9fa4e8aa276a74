#include "innerlip/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "innerlip/error.hpp"
#include "innerlip/structure.hpp"

namespace innerlip {

std::string GalleryEntry::claim(const std::string& key) const {
  for (const auto& c : expected)
    if (c.key == key) return c.value;
  return {};
}

EntrySamples sample_entry(const GalleryEntry& e, const GridSpec& grid) {
  grid.validate();
  const double d = grid.spacing();
  EntrySamples s{ComplexField(grid), {ComplexField(grid), ComplexField(grid)}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx z = grid.point(i);
    if (!e.domain.contains(z) || (e.singular && e.singular(z, e.mask_cells * d))) {
      s.h.exclude(i);
      s.dh.d_z.exclude(i);
      s.dh.d_zbar.exclude(i);
      continue;
    }
    s.h[i] = e.h(z);
    s.dh.d_z[i] = e.h_z(z);
    s.dh.d_zbar[i] = e.h_zbar(z);
    if (!std::isfinite(std::abs(s.h[i])) || !std::isfinite(std::abs(s.dh.d_z[i])) ||
        !std::isfinite(std::abs(s.dh.d_zbar[i]))) {
      std::ostringstream os;
      os << e.name << ": non-finite closed form at z = (" << z.real() << ", " << z.imag() << ")";
      fail(ErrorKind::precondition, os.str());
    }
  }
  return s;
}

double derivative_error(const GalleryEntry& e, const GridSpec& grid, double min_dist) {
  const auto s = sample_entry(e, grid);
  const auto num = wirtinger(s.h, Scheme::central4);
  const double d = grid.spacing();
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx z = grid.point(i);
    if (num.d_z.excluded(i) || !e.domain.contains(z) || e.domain.distance(z) < min_dist) continue;
    if (e.singular && e.singular(z, e.mask_cells * d + min_dist)) continue;
    scale = std::max(scale, std::abs(s.dh.d_z[i]) + std::abs(s.dh.d_zbar[i]));
    err = std::max({err, std::abs(num.d_z[i] - s.dh.d_z[i]), std::abs(num.d_zbar[i] - s.dh.d_zbar[i])});
  }
  return scale > 0.0 ? err / scale : -1.0;
}

GalleryEntry cuberoot_example() {
  GalleryEntry e;
  e.name = "cuberoot";
  e.summary = "Hopf product -1 on |z-1|<1/2, Lipschitz but not C^1 across [1,3/2)";
  e.domain = domain::disk(1.0, 0.5);
  e.singular = [](cplx z, double d) { return std::abs(z.imag()) < d && z.real() > 1.0 - d; };
  e.h = [](cplx z) {
    const cplx zb = std::conj(z);
    const cplx a = std::pow(z, 2.0 / 3.0), b = std::pow(zb, 2.0 / 3.0);
    return 1.5 * (b - a) + std::pow(1.0 - a, 1.5) + std::pow(1.0 - b, 1.5);
  };
  e.h_z = [](cplx z) {
    const cplx r = std::pow(z, -1.0 / 3.0);
    return -r - r * std::sqrt(1.0 - std::pow(z, 2.0 / 3.0));
  };
  e.h_zbar = [](cplx z) {
    const cplx zb = std::conj(z);
    const cplx r = std::pow(zb, -1.0 / 3.0);
    return r - r * std::sqrt(1.0 - std::pow(zb, 2.0 / 3.0));
  };
  e.hopf = [](cplx) { return cplx(-1.0); };
  e.expected = {{"hopf_product", "-1"}, {"jacobian_nonneg", "true"}, {"lipschitz", "true"}, {"C1", "false"}};
  e.structure = "hopf:phi=const:-1";
  return e;
}

GalleryEntry piecewise_example() {
  GalleryEntry e;
  e.name = "piecewise";
  e.summary = "3z above the real axis, 2z+zbar below; solves h_zbar = 6/h_z - 2";
  e.domain = domain::unit_disk();
  e.singular = [](cplx z, double d) { return std::abs(z.imag()) < d; };
  e.h = [](cplx z) { return z.imag() >= 0.0 ? 3.0 * z : 2.0 * z + std::conj(z); };
  e.h_z = [](cplx z) { return cplx(z.imag() >= 0.0 ? 3.0 : 2.0); };
  e.h_zbar = [](cplx z) { return cplx(z.imag() >= 0.0 ? 0.0 : 1.0); };
  e.expected = {{"structure", "rational:6,-2"}, {"H(3)", "0"}, {"H(2)", "1"}, {"lipschitz", "3"}, {"C1", "false"}};
  e.structure = "rational:6,-2";
  e.lipschitz = 3.0;
  return e;
}

namespace pseudo_hopf {

namespace {
// t = (e^{2u} - 1)/2 - u with psi = cosh u
double t_of_u(double u) { return 0.5 * std::expm1(2.0 * u) - u; }

double u_of_t(double t) {
  if (!(t >= 0.0)) fail(ErrorKind::precondition, "pseudo-Hopf psi needs t >= 0");
  if (t == 0.0) return 0.0;
  double lo = 0.0, hi = std::acosh(1.0 + std::sqrt(t + 2.0));
  double u = hi;
  for (int it = 0; it < 200; ++it) {
    const double f = t_of_u(u) - t;
    if (f > 0.0) hi = std::min(hi, u);
    else lo = std::max(lo, u);
    const double df = std::expm1(2.0 * u);
    double next = df > 0.0 ? u - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-15 * std::max(u, 1e-300)) return next;
    u = next;
    if (hi - lo <= 1e-16 * hi) return u;
  }
  return u;
}
}  // namespace

double t_of_psi(double p) {
  if (!(p >= 1.0)) fail(ErrorKind::precondition, "pseudo-Hopf t(psi) needs psi >= 1");
  const double s = std::sqrt(p * p - 1.0);
  return p * p - 1.0 + p * s - std::log(p + s);
}

double psi(double t) { return std::cosh(u_of_t(t)); }

double psi_prime(double t) { return 0.5 * std::exp(-u_of_t(t)); }

}  // namespace pseudo_hopf

GalleryEntry pseudo_hopf_example() {
  GalleryEntry e;
  e.name = "pseudo_hopf";
  e.summary = "h = 2z psi(-2 log|z|) solves h_z |h_zbar| = 1; quasiconformal, not Lipschitz at 0";
  e.domain = domain::unit_disk();
  e.singular = [](cplx z, double d) { return std::abs(z) < d; };
  e.h = [](cplx z) { return 2.0 * z * pseudo_hopf::psi(-2.0 * std::log(std::abs(z))); };
  e.h_z = [](cplx z) {
    const double t = -2.0 * std::log(std::abs(z));
    return cplx(2.0 * pseudo_hopf::psi(t) - 2.0 * pseudo_hopf::psi_prime(t));
  };
  e.h_zbar = [](cplx z) {
    const double t = -2.0 * std::log(std::abs(z));
    return -2.0 * (z / std::conj(z)) * pseudo_hopf::psi_prime(t);
  };
  e.expected = {{"hz_abs_hzbar", "1"}, {"jacobian_positive", "true"}, {"quasiconformal", "true"},
                {"lipschitz", "false"}};
  return e;
}

GalleryEntry loglog_example() {
  GalleryEntry e;
  e.name = "loglog";
  e.summary = "h = z loglog|z|^-2 on |z|<1/2: continuous Hopf product, not Lipschitz";
  e.domain = domain::disk(0.0, 0.5);
  e.singular = [](cplx z, double d) { return std::abs(z) < d; };
  e.h = [](cplx z) { return z * std::log(-2.0 * std::log(std::abs(z))); };
  e.h_z = [](cplx z) {
    const double L = -2.0 * std::log(std::abs(z));
    return cplx(std::log(L) - 1.0 / L);
  };
  e.h_zbar = [](cplx z) {
    const double L = -2.0 * std::log(std::abs(z));
    return -(z / std::conj(z)) / L;
  };
  e.expected = {{"hopf_continuous", "true"}, {"lipschitz", "false"}, {"hoelder_structure", "false"}};
  e.structure = "loglog";
  return e;
}

GalleryEntry halfdisk_example() {
  GalleryEntry e;
  e.name = "halfdisk";
  e.summary = "h = zbar^2 + sin log z on the right half-disk; Hopf product 2 cos log z";
  e.domain = domain::half_disk();
  e.singular = [](cplx z, double d) { return std::abs(z) < d; };
  // |z|^i oscillation: central4 relative error ~ 1.4 (delta/|z|)^4 independent of delta
  e.mask_cells = 4.0;
  e.h = [](cplx z) { return std::conj(z) * std::conj(z) + std::sin(std::log(z)); };
  e.h_z = [](cplx z) { return std::cos(std::log(z)) / z; };
  e.h_zbar = [](cplx z) { return 2.0 * std::conj(z); };
  e.hopf = [](cplx z) { return 2.0 * std::cos(std::log(z)); };
  e.expected = {{"hopf_product", "2cos(log z)"}, {"bounded", "true"}, {"boundary_limit", "false"}};
  return e;
}

GalleryEntry harmonic_probe(cplx c) {
  GalleryEntry e;
  std::ostringstream os;
  os << "harmonic_probe:" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  e.name = os.str();
  e.summary = "h = z + c zbar^2; Hopf product 2 conj(c) z";
  e.domain = domain::unit_disk();
  e.h = [c](cplx z) { return z + c * std::conj(z) * std::conj(z); };
  e.h_z = [](cplx) { return cplx(1.0); };
  e.h_zbar = [c](cplx z) { return 2.0 * c * std::conj(z); };
  e.hopf = [c](cplx z) { return 2.0 * std::conj(c) * z; };
  const bool folds = 2.0 * std::abs(c) >= 1.0;
  e.expected = {{"hopf_product", "2conj(c)z"}, {"jacobian_sign_change", folds ? "true" : "false"}};
  return e;
}

std::vector<GalleryEntry> gallery() {
  return {cuberoot_example(), piecewise_example(), pseudo_hopf_example(), loglog_example(), halfdisk_example(),
          harmonic_probe(0.2)};
}

GalleryEntry gallery_entry(const std::string& name) {
  if (name.rfind("harmonic_probe", 0) == 0) {
    if (name == "harmonic_probe") return harmonic_probe(0.2);
    if (name.size() > 15 && name[14] == ':') return harmonic_probe(parse_complex(name.substr(15)));
  }
  for (auto& e : gallery())
    if (e.name == name) return e;
  fail(ErrorKind::usage, "unknown gallery entry '" + name +
                             "' (known: cuberoot, piecewise, pseudo_hopf, loglog, halfdisk, harmonic_probe[:c])");
}

}  // namespace innerlip
