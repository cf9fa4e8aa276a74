#include "innerlip/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fft.hpp"
#include "innerlip/error.hpp"
#include "innerlip/kernels.hpp"

namespace innerlip {

namespace region {
Region everywhere() {
  return [](cplx) { return true; };
}
Region disk(cplx center, double radius) {
  return [=](cplx z) { return std::abs(z - center) <= radius; };
}
Region open_disk(cplx center, double radius) {
  return [=](cplx z) { return std::abs(z - center) < radius; };
}
Region annulus(cplx center, double inner, double outer) {
  return [=](cplx z) {
    const double r = std::abs(z - center);
    return r >= inner && r <= outer;
  };
}
Region intersect(Region a, Region b) {
  return [a = std::move(a), b = std::move(b)](cplx z) { return a(z) && b(z); };
}
Region unite(Region a, Region b) {
  return [a = std::move(a), b = std::move(b)](cplx z) { return a(z) || b(z); };
}
}  // namespace region

ComplexField::ComplexField(const GridSpec& grid) : grid_(grid), values_(grid.size()) {}

ComplexField::ComplexField(const GridSpec& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) fail(ErrorKind::precondition, "field size does not match grid");
}

void ComplexField::exclude(std::size_t i) {
  if (mask_.empty()) mask_.assign(values_.size(), 0);
  mask_[i] = 1;
  values_[i] = 0.0;
}

void ComplexField::set_mask(std::vector<std::uint8_t> mask) {
  if (!mask.empty() && mask.size() != values_.size())
    fail(ErrorKind::precondition, "mask size does not match grid");
  mask_ = std::move(mask);
}

double ComplexField::excluded_fraction() const {
  if (mask_.empty()) return 0.0;
  std::size_t c = 0;
  for (auto m : mask_) c += (m != 0);
  return static_cast<double>(c) / static_cast<double>(mask_.size());
}

bool ComplexField::satisfies_2D_support() const {
  const double limit = 1e-12 * max_abs();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (excluded(i)) continue;
    if (std::abs(grid_.point(i)) > 2.0 && std::abs(values_[i]) > limit) return false;
  }
  return true;
}

void ComplexField::mark_supported_in_2D() {
  if (!satisfies_2D_support())
    fail(ErrorKind::precondition, "field does not vanish outside the disk of radius 2");
  supported_in_2D_ = true;
}

double ComplexField::max_abs() const {
  if (mask_.empty()) return kernels::max_abs(values_);
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!mask_[i]) m = std::max(m, std::abs(values_[i]));
  return m;
}

ComplexField sample(const GridSpec& grid, const PointFn& f, const Region& excluded) {
  grid.validate();
  ComplexField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx z = grid.point(i);
    if (excluded && excluded(z)) {
      out.exclude(i);
      continue;
    }
    const cplx v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "non-finite sample at z = (" << z.real() << ", " << z.imag() << ")";
      fail(ErrorKind::precondition, os.str());
    }
    out[i] = v;
  }
  return out;
}

namespace {

FieldPair wirtinger_spectral(const ComplexField& field) {
  if (field.has_mask()) fail(ErrorKind::precondition, "spectral derivatives need a field without excluded points");
  const GridSpec& g = field.grid();
  const std::size_t n = g.n;
  std::vector<cplx> hat(field.values().begin(), field.values().end());
  detail::fft2d(hat, n, false);
  std::vector<cplx> dz(hat.size()), dzb(hat.size());
  for (std::size_t ky = 0; ky < n; ++ky) {
    const double wy = detail::wavenumber(ky, n, g.half_width);
    const bool ny = detail::is_nyquist(ky, n);
    for (std::size_t kx = 0; kx < n; ++kx) {
      const std::size_t i = ky * n + kx;
      if (ny || detail::is_nyquist(kx, n)) continue;
      const double wx = detail::wavenumber(kx, n, g.half_width);
      dz[i] = hat[i] * cplx(0.5 * wy, 0.5 * wx);
      dzb[i] = hat[i] * cplx(-0.5 * wy, 0.5 * wx);
    }
  }
  detail::fft2d(dz, n, true);
  detail::fft2d(dzb, n, true);
  return {ComplexField(g, std::move(dz)), ComplexField(g, std::move(dzb))};
}

FieldPair wirtinger_central(const ComplexField& field, bool fourth) {
  const GridSpec& g = field.grid();
  const std::size_t n = g.n;
  const long ln = static_cast<long>(n);
  const double d = g.spacing();
  const bool zero_outside = field.supported_in_2D();
  ComplexField dz(g), dzb(g);

  // Returns false when the neighbour is unusable.
  auto get = [&](long j, long k, cplx& v) {
    if (j < 0 || k < 0 || j >= ln || k >= ln) {
      v = 0.0;
      return zero_outside;
    }
    const std::size_t i = g.index(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
    if (field.excluded(i)) return false;
    v = field[i];
    return true;
  };

  for (long k = 0; k < ln; ++k) {
    for (long j = 0; j < ln; ++j) {
      const std::size_t i = g.index(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
      if (field.excluded(i)) {
        dz.exclude(i);
        dzb.exclude(i);
        continue;
      }
      cplx xp1, xm1, yp1, ym1, xp2, xm2, yp2, ym2;
      bool ok = get(j + 1, k, xp1) && get(j - 1, k, xm1) && get(j, k + 1, yp1) && get(j, k - 1, ym1);
      if (ok && fourth)
        ok = get(j + 2, k, xp2) && get(j - 2, k, xm2) && get(j, k + 2, yp2) && get(j, k - 2, ym2);
      if (!ok) {
        dz.exclude(i);
        dzb.exclude(i);
        continue;
      }
      cplx fx, fy;
      if (fourth) {
        fx = (-xp2 + 8.0 * xp1 - 8.0 * xm1 + xm2) / (12.0 * d);
        fy = (-yp2 + 8.0 * yp1 - 8.0 * ym1 + ym2) / (12.0 * d);
      } else {
        fx = (xp1 - xm1) / (2.0 * d);
        fy = (yp1 - ym1) / (2.0 * d);
      }
      const cplx i_fy = cplx(-fy.imag(), fy.real());
      dz[i] = 0.5 * (fx - i_fy);
      dzb[i] = 0.5 * (fx + i_fy);
    }
  }
  return {std::move(dz), std::move(dzb)};
}

}  // namespace

ComplexField cell_average_indicator(const GridSpec& grid, const Region& inside, int s) {
  if (s < 1) fail(ErrorKind::precondition, "cell_average_indicator needs s >= 1");
  const double d = grid.spacing();
  return sample(grid, [&](cplx z) {
    int c = 0;
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) c += inside(z + cplx((a + 0.5) / s - 0.5, (b + 0.5) / s - 0.5) * d);
    return cplx(static_cast<double>(c) / (s * s));
  });
}

FieldPair wirtinger(const ComplexField& field, Scheme scheme) {
  switch (scheme) {
    case Scheme::spectral: return wirtinger_spectral(field);
    case Scheme::central2: return wirtinger_central(field, false);
    case Scheme::central4: return wirtinger_central(field, true);
  }
  fail(ErrorKind::usage, "unknown derivative scheme");
}

double lp_norm(const ComplexField& field, double p, const Region& where) {
  if (!(p >= 1.0)) fail(ErrorKind::precondition, "lp_norm needs p >= 1");
  const GridSpec& g = field.grid();
  const double cell = g.spacing() * g.spacing();
  const bool sup = std::isinf(p);
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field.excluded(i) || !where(g.point(i))) continue;
    ++count;
    const double a = std::abs(field[i]);
    if (sup)
      acc = std::max(acc, a);
    else if (p == 2.0)
      acc += a * a;
    else
      acc += std::pow(a, p);
  }
  if (count == 0) fail(ErrorKind::precondition, "lp_norm over an empty region");
  if (sup) return acc;
  return std::pow(acc * cell, 1.0 / p);
}

namespace {

double shift_difference_norm(const ComplexField& field, long sj, long sk, double p) {
  const GridSpec& g = field.grid();
  const long n = static_cast<long>(g.n);
  auto value = [&](long j, long k) -> cplx {
    if (j < 0 || k < 0 || j >= n || k >= n) return 0.0;
    const std::size_t i = g.index(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
    return field.excluded(i) ? cplx(0.0) : field[i];
  };
  // Sum over every lattice point where either term can be nonzero (zero extension).
  const long j0 = std::min(0L, -sj), j1 = std::max(n, n - sj);
  const long k0 = std::min(0L, -sk), k1 = std::max(n, n - sk);
  double acc = 0.0;
  for (long k = k0; k < k1; ++k)
    for (long j = j0; j < j1; ++j) {
      const double a = std::abs(value(j + sj, k + sk) - value(j, k));
      if (a != 0.0) acc += std::pow(a, p);
    }
  return std::pow(acc * g.spacing() * g.spacing(), 1.0 / p);
}

}  // namespace

BesovEstimate besov_estimate(const ComplexField& field, double alpha, double p) {
  if (!field.supported_in_2D()) fail(ErrorKind::precondition, "Besov estimate needs a field supported in the disk of radius 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::precondition, "Besov exponent alpha must lie in (0,1]");
  BesovEstimate out;
  out.lp = lp_norm(field, p);
  const GridSpec& g = field.grid();
  static constexpr int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  for (std::size_t step = 1; step <= g.n / 4; step *= 2) {
    for (const auto& d : dirs) {
      const long sj = d[0] * static_cast<long>(step), sk = d[1] * static_cast<long>(step);
      const double tau = g.spacing() * std::hypot(static_cast<double>(sj), static_cast<double>(sk));
      out.seminorm = std::max(out.seminorm, shift_difference_norm(field, sj, sk, p) / std::pow(tau, alpha));
    }
  }
  return out;
}

double besov_seminorm(const ComplexField& field, double alpha, double p) {
  return besov_estimate(field, alpha, p).total();
}

namespace {

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

std::vector<cplx> convex_hull(std::vector<cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<cplx> hull(2 * pts.size());
  std::size_t h = 0;
  for (const cplx& p : pts) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
    hull[h++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {
    while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h - 1);
  return hull;
}

}  // namespace

double oscillation(const ComplexField& field, const Region& where) {
  std::vector<cplx> pts;
  const GridSpec& g = field.grid();
  for (std::size_t i = 0; i < field.size(); ++i)
    if (!field.excluded(i) && where(g.point(i))) pts.push_back(field[i]);
  if (pts.empty()) fail(ErrorKind::precondition, "oscillation over an empty region");
  const auto hull = convex_hull(std::move(pts));
  double best = 0.0;
  for (std::size_t a = 0; a < hull.size(); ++a)
    for (std::size_t b = a + 1; b < hull.size(); ++b) best = std::max(best, std::abs(hull[a] - hull[b]));
  return best;
}

double lipschitz_estimate(const ComplexField& field, const Region& where, double min_sep,
                          std::uint64_t seed) {
  const GridSpec& g = field.grid();
  const double d = g.spacing();
  if (min_sep < 2.0 * d * (1.0 - 1e-12)) fail(ErrorKind::precondition, "lipschitz_estimate needs min_sep >= 2*delta");
  const long n = static_cast<long>(g.n);
  std::vector<std::uint8_t> usable(field.size(), 0);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < field.size(); ++i)
    if (!field.excluded(i) && where(g.point(i))) {
      usable[i] = 1;
      members.push_back(i);
    }
  if (members.size() < 2) fail(ErrorKind::precondition, "lipschitz_estimate needs at least two samples");

  double best = 0.0;
  // Short lattice offsets (half-plane only; pairs are symmetric).
  const double lo = min_sep / d, hi = 2.0 * min_sep / d;
  const long r = static_cast<long>(std::ceil(hi));
  for (long dk = 0; dk <= r; ++dk) {
    for (long dj = -r; dj <= r; ++dj) {
      if (dk == 0 && dj <= 0) continue;
      const double len = std::hypot(static_cast<double>(dj), static_cast<double>(dk));
      if (len < lo * (1.0 - 1e-12) || len > hi) continue;
      for (std::size_t i : members) {
        const long j = static_cast<long>(i % g.n) + dj, k = static_cast<long>(i / g.n) + dk;
        if (j < 0 || k < 0 || j >= n || k >= n) continue;
        const std::size_t i2 = g.index(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
        if (!usable[i2]) continue;
        best = std::max(best, std::abs(field[i2] - field[i]) / (len * d));
      }
    }
  }
  // Random long-range pairs.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  const std::size_t pairs = std::min<std::size_t>(1000000, members.size() * 16);
  for (std::size_t t = 0; t < pairs; ++t) {
    const std::size_t a = members[pick(rng)], b = members[pick(rng)];
    const double sep = std::abs(g.point(a) - g.point(b));
    if (sep < min_sep) continue;
    best = std::max(best, std::abs(field[a] - field[b]) / sep);
  }
  return best;
}

RealField jacobian(const FieldPair& pair) {
  if (!(pair.d_z.grid() == pair.d_zbar.grid())) fail(ErrorKind::precondition, "jacobian: grids differ");
  RealField out;
  out.grid = pair.d_z.grid();
  out.values.resize(pair.d_z.size());
  kernels::jacobian(pair.d_z.values(), pair.d_zbar.values(), out.values);
  if (pair.d_z.has_mask() || pair.d_zbar.has_mask()) {
    out.mask.assign(out.values.size(), 0);
    for (std::size_t i = 0; i < out.values.size(); ++i)
      if (pair.d_z.excluded(i) || pair.d_zbar.excluded(i)) {
        out.mask[i] = 1;
        out.values[i] = 0.0;
      }
  }
  return out;
}

cplx interpolate(const ComplexField& field, cplx z) {
  const GridSpec& g = field.grid();
  const double d = g.spacing();
  const double max_base = static_cast<double>(g.n - 4);
  const double tx = (z.real() + g.half_width) / d, ty = (z.imag() + g.half_width) / d;
  const double bx = std::clamp(std::floor(tx) - 1.0, 0.0, max_base);
  const double by = std::clamp(std::floor(ty) - 1.0, 0.0, max_base);
  auto weights = [](double t, double w[4]) {
    for (int a = 0; a < 4; ++a) {
      double v = 1.0;
      for (int b = 0; b < 4; ++b)
        if (b != a) v *= (t - b) / static_cast<double>(a - b);
      w[a] = v;
    }
  };
  double wx[4], wy[4];
  weights(tx - bx, wx);
  weights(ty - by, wy);
  cplx acc = 0.0;
  const auto j0 = static_cast<std::size_t>(bx), k0 = static_cast<std::size_t>(by);
  for (int b = 0; b < 4; ++b) {
    cplx row = 0.0;
    for (int a = 0; a < 4; ++a) row += wx[a] * field.at(j0 + a, k0 + b);
    acc += wy[b] * row;
  }
  return acc;
}

ComplexField subtract(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) fail(ErrorKind::precondition, "subtract: grids differ");
  ComplexField out(a.grid());
  kernels::sub(a.values(), b.values(), out.values());
  if (a.has_mask() || b.has_mask())
    for (std::size_t i = 0; i < out.size(); ++i)
      if (a.excluded(i) || b.excluded(i)) out.exclude(i);
  return out;
}

}  // namespace innerlip
