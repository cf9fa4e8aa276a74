#include "innerlip/transforms.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "innerlip/error.hpp"
#include "innerlip/kernels.hpp"

namespace innerlip {

namespace lattice {

std::vector<double> eisenstein_unit(int kmax) {
  using std::numbers::pi;
  std::vector<double> c(static_cast<std::size_t>(std::max(kmax, 3) + 1), 0.0);
  const double g4 = std::pow(std::tgamma(0.25), 8) / (960.0 * pi * pi);
  c[2] = 3.0 * g4;
  c[3] = 0.0;
  for (int k = 4; k <= kmax; ++k) {
    double s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k - m)];
    c[static_cast<std::size_t>(k)] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
  }
  std::vector<double> g(static_cast<std::size_t>(kmax + 1), 0.0);
  for (int k = 2; k <= kmax; ++k) g[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] / (2.0 * k - 1.0);
  return g;
}

}  // namespace lattice

namespace {

using std::numbers::pi;

enum class Op { cauchy, beurling };

void check_input(const ComplexField& omega) {
  const GridSpec& g = omega.grid();
  g.validate();
  if (!omega.supported_in_2D()) fail(ErrorKind::precondition, "transform input must be flagged supported_in_2D");
  if (g.half_width < 4.0) fail(ErrorKind::precondition, "transform needs a box half-width A >= 4");
  if (omega.has_mask()) fail(ErrorKind::precondition, "transform input has excluded points");
}

double filter(std::size_t m, std::size_t n, int order) {
  if (order <= 0) return 1.0;
  const double s = (2 * m < n) ? static_cast<double>(m) : static_cast<double>(n - m);
  return std::exp(-36.0 * std::pow(s / (0.5 * static_cast<double>(n)), order));
}

std::vector<cplx> multiplier(const GridSpec& g, Op op, double scale, int order) {
  const std::size_t n = g.n;
  std::vector<cplx> m(g.size(), 0.0);
  for (std::size_t ky = 0; ky < n; ++ky) {
    if (detail::is_nyquist(ky, n)) continue;
    const double wy = detail::wavenumber(ky, n, g.half_width);
    for (std::size_t kx = 0; kx < n; ++kx) {
      if (detail::is_nyquist(kx, n) || (kx == 0 && ky == 0)) continue;
      const cplx zeta(detail::wavenumber(kx, n, g.half_width), wy);
      m[ky * n + kx] = scale * filter(kx, n, order) * filter(ky, n, order) * (op == Op::cauchy ? cplx(0.0, -2.0) / zeta : std::conj(zeta) / zeta);
    }
  }
  return m;
}

// Coefficients a_k of the image-cancelling polynomial sum_k a_k z^k for the Cauchy
// transform: (1/pi) sum_m G_{4m} * integral (z - tau)^{4m-1} w(tau).
std::vector<cplx> image_polynomial(const ComplexField& omega, int terms) {
  const GridSpec& g = omega.grid();
  const double L = 2.0 * g.half_width;
  const int deg = 4 * terms - 1;
  std::vector<cplx> moments(static_cast<std::size_t>(deg + 1), 0.0);
  const double cell = g.spacing() * g.spacing();
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const cplx w = omega[i];
    if (w == 0.0) continue;
    const cplx tau = g.point(i);
    cplx pw = w * cell;
    for (int j = 0; j <= deg; ++j) {
      moments[static_cast<std::size_t>(j)] += pw;
      pw *= tau;
    }
  }
  const auto G = lattice::eisenstein_unit(2 * terms);
  std::vector<cplx> a(static_cast<std::size_t>(deg + 1), 0.0);
  for (int m = 1; m <= terms; ++m) {
    const int e = 4 * m - 1;
    const double gm = G[static_cast<std::size_t>(2 * m)] / std::pow(L, 4 * m) / pi;
    double binom = 1.0;  // C(e, j)
    for (int j = 0; j <= e; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      a[static_cast<std::size_t>(e - j)] += gm * binom * sign * moments[static_cast<std::size_t>(j)];
      binom = binom * (e - j) / (j + 1);
    }
  }
  return a;
}

cplx horner(const std::vector<cplx>& a, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * z + a[k];
  return acc;
}

ComplexField apply(const ComplexField& omega, Op op, const TransformOptions& opt) {
  check_input(omega);
  const GridSpec& g = omega.grid();
  std::vector<cplx> hat(omega.values().begin(), omega.values().end());
  detail::fft2d(hat, g.n, false);
  const auto mult = multiplier(g, op, opt.multiplier_scale, opt.filter_order);
  kernels::cmul(hat, mult, hat);
  detail::fft2d(hat, g.n, true);
  ComplexField out(g, std::move(hat));

  if (opt.periodization == Periodization::free_space) {
    auto poly = image_polynomial(omega, std::max(opt.lattice_terms, 1));
    if (op == Op::cauchy) {
      const double L = 2.0 * g.half_width;
      cplx m0 = 0.0;
      for (std::size_t i = 0; i < omega.size(); ++i) m0 += omega[i];
      m0 *= g.spacing() * g.spacing() / (L * L);
      for (std::size_t i = 0; i < out.size(); ++i) {
        const cplx z = g.point(i);
        out[i] += m0 * std::conj(z) + horner(poly, z);
      }
    } else {
      std::vector<cplx> deriv(poly.size() > 1 ? poly.size() - 1 : 1, 0.0);
      for (std::size_t k = 1; k < poly.size(); ++k) deriv[k - 1] = static_cast<double>(k) * poly[k];
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += horner(deriv, g.point(i));
    }
  }
  if (op == Op::cauchy) {
    const cplx origin = out[g.origin_index()];
    for (auto& v : out.values()) v -= origin;
  }
  return out;
}

}  // namespace

ComplexField cauchy(const ComplexField& omega, const TransformOptions& opt, TransformDiagnostics* diag) {
  ComplexField f = apply(omega, Op::cauchy, opt);
  if (diag) {
    diag->method = TransformMethod::fft;
    diag->periodization_box = omega.grid().half_width;
    const double wn = lp_norm(omega, 2.0);
    if (wn > 0.0) {
      const auto pair = wirtinger(f, Scheme::central4);
      const Region inner = region::disk(0.0, omega.grid().half_width / 2);
      double num = 0.0, den = 0.0;
      const GridSpec& g = omega.grid();
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (pair.d_zbar.excluded(i) || !inner(g.point(i))) continue;
        num += std::norm(pair.d_zbar[i] - omega[i]);
        den += std::norm(omega[i]);
      }
      diag->residual_didentity = den > 0.0 ? std::sqrt(num / den) : 0.0;
    }
  }
  return f;
}

ComplexField beurling(const ComplexField& omega, const TransformOptions& opt) {
  return apply(omega, Op::beurling, opt);
}

double cauchy_identity_residual(const ComplexField& omega, const TransformOptions& opt) {
  TransformDiagnostics d;
  cauchy(omega, opt, &d);
  return d.residual_didentity;
}

double cauchy_decay_check(const ComplexField& omega, double p, const TransformOptions& opt) {
  if (!(p > 2.0)) fail(ErrorKind::precondition, "cauchy_decay_check needs p > 2");
  const double wp = lp_norm(omega, p);
  if (wp == 0.0) fail(ErrorKind::precondition, "cauchy_decay_check: omega has zero L^p norm");
  const ComplexField f = cauchy(omega, opt);
  const GridSpec& g = f.grid();
  const double rmax = g.half_width / 2;
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = std::abs(g.point(i));
    if (r == 0.0 || r > rmax) continue;
    best = std::max(best, std::abs(f[i]) / (std::pow(r, 1.0 - 2.0 / p) * wp));
  }
  return best;
}

namespace {

constexpr std::array<double, 8> gl_x = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> gl_w = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

// integral of F(tau) dtau along the segment a -> b, with panels graded toward the
// point of the segment nearest to z.
template <class F>
cplx edge_integral(const F& f, cplx a, cplx b, cplx z) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double ts = ((z - a) * std::conj(d)).real() / len2;
  ts = std::clamp(ts, 0.0, 1.0);
  // Integrates over [t0, t1] (signed), with panels halving toward t1.
  auto graded = [&](double t0, double t1) {
    cplx acc = 0.0;
    auto panel = [&](double a0, double a1) {
      const double hh = 0.5 * (a1 - a0), c = 0.5 * (a1 + a0);
      for (std::size_t q = 0; q < gl_x.size(); ++q) acc += gl_w[q] * hh * f(a + (c + hh * gl_x[q]) * d) * d;
    };
    double span = t1 - t0;
    if (span == 0.0) return acc;
    double t = t0;
    for (int k = 0; k < 24; ++k) {
      const double next = t1 - span * 0.5;
      panel(t, next);
      t = next;
      span *= 0.5;
    }
    panel(t, t1);
    return acc;
  };
  const cplx acc = graded(0.0, ts) - graded(1.0, ts);
  return acc;
}

}  // namespace

std::vector<cplx> quadrature_oracle(const ComplexField& omega, Kernel kernel, const std::vector<cplx>& probes) {
  const GridSpec& g = omega.grid();
  const double d = g.spacing();
  const double h = 0.5 * d;
  const bool is_cauchy = kernel == Kernel::cauchy;

  auto cell_exact = [&](cplx c, cplx z) {
    // (1/2i) contour integral of (tau-bar - z-bar)/(z - tau)^k over the cell boundary.
    auto f = [&](cplx tau) {
      const cplx num = std::conj(tau - z);
      const cplx den = z - tau;
      return is_cauchy ? num / den : num / (den * den);
    };
    const cplx v[4] = {c + cplx(-h, -h), c + cplx(h, -h), c + cplx(h, h), c + cplx(-h, h)};
    cplx s = 0.0;
    for (int e = 0; e < 4; ++e) s += edge_integral(f, v[e], v[(e + 1) % 4], z);
    return s / cplx(0.0, 2.0);
  };

  auto evaluate = [&](cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
      const cplx w = omega[i];
      if (w == 0.0 || omega.excluded(i)) continue;
      const cplx tau = g.point(i);
      const cplx u = z - tau;
      if (std::max(std::abs(u.real()), std::abs(u.imag())) <= 3.5 * d) {
        acc += w * cell_exact(tau, z);
      } else {
        acc += w * d * d * (is_cauchy ? 1.0 / u : 1.0 / (u * u));
      }
    }
    return is_cauchy ? acc / pi : -acc / pi;
  };

  std::vector<cplx> out;
  out.reserve(probes.size());
  const cplx origin = is_cauchy ? evaluate(0.0) : cplx(0.0);
  for (const cplx z : probes) out.push_back(evaluate(z) - origin);
  return out;
}

}  // namespace innerlip
