#include "util.hpp"

#include <random>

#include "innerlip/analysis.hpp"

using namespace innerlip;
using testutil::kind_of;

namespace {

double l0_of(const StructureSpec& s) { return lambda_zero(s, default_constants(s.alpha)); }

GoodSolution solve_at(const StructureSpec& s, cplx lambda, std::size_t n = 128) {
  SolverConfig c;
  c.grid = GridSpec{4.0, n};
  c.lambda = lambda;
  return solve_good(extend(s), c);
}

DifferenceMap manual_dm(const GridSpec& g, const PointFn& gz, const PointFn& gzb) {
  DifferenceMap dm;
  dm.lambda = 1.0;
  dm.pair_g = {sample(g, gz), sample(g, gzb)};
  return dm;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("difference_map: the good solution minus itself vanishes") {
  const auto spec = parse_structure("rational:6,-2");
  const double l0 = l0_of(spec);
  const auto sol = solve_at(spec, l0);
  const GridSpec& g = sol.f.grid();
  auto h = sample(g, [](cplx) { return cplx(0.0); });
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = sol.lambda * g.point(i) + sol.f[i];
  FieldPair dh{ComplexField(g), sol.omega};
  for (std::size_t i = 0; i < g.size(); ++i) dh.d_z[i] = sol.lambda + sol.f_z[i];
  const auto dm = difference_map(h, dh, sol, l0, spec.R);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (dm.g.excluded(i)) continue;
    CHECK(std::abs(dm.g[i]) <= 1e-12 * l0);
    CHECK(std::abs(dm.pair_g.d_zbar[i]) == 0.0);
  }
  CHECK_FALSE(dm.binding);
  CHECK_FALSE(dm.warning.empty());
}

TEST_CASE("difference_map: grid mismatch") {
  const auto spec = parse_structure("rational:6,-2");
  const auto sol = solve_at(spec, l0_of(spec), 64);
  const auto h = sample(GridSpec{4.0, 128}, [](cplx z) { return z; });
  CHECK(kind_of([&] { difference_map(h, sol, 1.0, 2.0); }) == ErrorKind::precondition);
}

TEST_CASE("difference_map and distortion for the piecewise map at the required lambda") {
  const auto spec = parse_structure("rational:6,-2");
  const double l0 = l0_of(spec);
  const double need = 4.0 * 1.0 + 4.0 * l0 + spec.R;
  const auto sol = solve_at(spec, need);
  const auto s = sample_entry(piecewise_example(), sol.f.grid());
  const auto dm = difference_map(s.h, s.dh, sol, l0, spec.R);
  CHECK(dm.N == 1.0);
  CHECK(dm.required == doctest::Approx(need));
  CHECK(dm.binding);
  for (std::size_t i = 0; i < dm.g.size(); ++i)
    if (!dm.g.excluded(i)) {
      CHECK(std::isfinite(std::abs(dm.pair_g.d_z[i])));
      CHECK(std::isfinite(std::abs(dm.pair_g.d_zbar[i])));
      CHECK(dm.G[i] == dm.g[i] / dm.lambda);
    }
  const auto rep = distortion_check(dm);
  CAPTURE(rep.to_text());
  CHECK(rep.passed());
  // the upper half-plane has |h_z| = 3 > R = 2
  CHECK(dm.case1_fraction > 0.3);
  CHECK(dm.case1_fraction < 0.7);
}

TEST_CASE("distortion_check examples") {
  GridSpec g{1.0, 64};
  const auto analytic = manual_dm(g, [](cplx z) { return 1.0 + z; }, [](cplx) { return cplx(0.0); });
  const auto r1 = distortion_check(analytic);
  CHECK(r1.passed());
  CHECK(r1.checks()[0].measured == 0.0);
  const auto anti = manual_dm(g, [](cplx) { return cplx(0.0); }, [](cplx) { return cplx(1.0); });
  const auto r2 = distortion_check(anti);
  CHECK_FALSE(r2.passed());
  CHECK(std::isinf(r2.checks()[0].measured));
  // 0/0 counts as 0
  const auto flat = manual_dm(g, [](cplx) { return cplx(0.0); }, [](cplx) { return cplx(0.0); });
  CHECK(distortion_check(flat).passed());
}

TEST_CASE("sigma examples") {
  CHECK(sigma(0.0, 0.0, 7.0) == 35.0);
  CHECK(sigma(3.0, 1.0, 10.0) == 9.0 + 4.0 + 50.0);
  CHECK(sigma(6.0, 2.0, 10.0) - 50.0 == doctest::Approx(2.0 * (sigma(3.0, 1.0, 10.0) - 50.0)));
  const auto s = sample_entry(piecewise_example(), GridSpec{2.0, 256});
  CHECK(sigma(s.h, s.dh.d_zbar, 10.0) == doctest::Approx(9.0 + 4.0 + 50.0).epsilon(0.01));
}

TEST_CASE("winding_number examples") {
  const auto w1 = winding_number([](cplx z) { return z; }, 1.0, 0.0);
  CHECK(w1.degree == 1);
  CHECK(w1.certified);
  const auto w2 = winding_number([](cplx z) { return z * z; }, 1.0, 0.0);
  CHECK(w2.degree == 2);
  CHECK(winding_number([](cplx z) { return std::conj(z); }, 1.0, 0.0).degree == -1);
  CHECK(winding_number([](cplx z) { return z; }, 1.0, 3.0).degree == 0);
  CHECK(kind_of([] { winding_number([](cplx z) { return z; }, 1.0, 1.0); }) == ErrorKind::precondition);
  CHECK(kind_of([] { winding_number([](cplx z) { return z; }, 1.0, 0.0, 100); }) == ErrorKind::precondition);
}

TEST_CASE("winding number is stable under small shifts of v") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const PointFn curve = [](cplx z) { return z + 0.3 * z * z * std::conj(z) + 0.1; };
  for (int k = 0; k < 20; ++k) {
    const cplx v(0.5 * U(rng), 0.5 * U(rng));
    const auto w = winding_number(curve, 1.0, v);
    if (!w.certified) continue;
    for (int q = 0; q < 5; ++q) {
      const cplx dv = std::polar(0.49 * w.min_modulus * std::abs(U(rng)), M_PI * U(rng));
      CHECK(winding_number(curve, 1.0, v + dv).degree == w.degree);
    }
  }
}

TEST_CASE("family degree is 1 for the piecewise map at rho >= sigma") {
  const auto spec = parse_structure("rational:6,-2");
  const double l0 = l0_of(spec);
  const double sig = sigma(3.0, 1.0, l0);
  const auto e = piecewise_example();
  SolverConfig base;
  base.grid = GridSpec{4.0, 64};
  for (double scale : {1.0, 2.0}) {
    const auto fam = solve_family(extend(spec), scale * sig, 256, l0, base);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 3; ++k) {
      cplx z1, z2;
      do z1 = {U(rng) / 3, U(rng) / 3}; while (std::abs(z1) >= 1.0 / 3);
      do z2 = {U(rng) / 3, U(rng) / 3}; while (std::abs(z2) >= 1.0 / 3 || z2 == z1);
      const auto w = family_winding(fam, z1, z2, e.h(z1) - e.h(z2));
      CHECK(w.degree == 1);
      CHECK(w.certified);
    }
  }
}

TEST_CASE("injectivity_check examples") {
  SolverConfig base;
  base.grid = GridSpec{4.0, 64};
  const auto fam = solve_family(extend(zero_structure()), 10.0, 8, 5.0, base);
  const auto rep = injectivity_check(fam, [](cplx) { return cplx(0.0); }, 2000);
  CHECK(rep.passed());
  for (const auto& c : rep.checks())
    if (c.name.rfind("min", 0) == 0) CHECK(c.measured == doctest::Approx(10.0));

  const auto spec = parse_structure("rational:6,-2");
  const double l0 = l0_of(spec);
  const double sig = sigma(3.0, 1.0, l0);
  const auto fam2 = solve_family(extend(spec), sig, 8, l0, base);
  const auto rep2 = injectivity_check(fam2, piecewise_example().h, 4000, 3, sig);
  CAPTURE(rep2.to_text());
  CHECK(rep2.passed());
}

TEST_CASE("gradient_bound_check examples") {
  const auto zero = zero_structure();
  const double l0 = l0_of(zero);
  GridSpec g{2.0, 128};
  const auto omega = domain::unit_disk();
  const Region off = [](cplx z) { return std::abs(z) >= 1.0; };
  const auto h = sample(g, [l0](cplx z) { return l0 * z; }, off);
  const auto dh = wirtinger(h, Scheme::central4);
  const auto c = gradient_bound_check(h, dh, omega, zero, {cplx(0.0)});
  REQUIRE(c.size() == 1);
  CHECK(c[0].measured_grad == doctest::Approx(l0).epsilon(1e-10));
  CHECK(c[0].bound >= 6.0 * l0);
  CHECK(c[0].bound == doctest::Approx(3.0 * oscillation(h, omega.inside) + 6.0 * l0));
  CHECK(c[0].pass);
  CHECK(kind_of([&] { gradient_bound_check(h, dh, omega, zero, {cplx(0.99)}); }) == ErrorKind::precondition);

  const auto pw = piecewise_example();
  const auto spec = parse_structure(pw.structure);
  const auto s = sample_entry(pw, g);
  const auto cp = gradient_bound_check(s.h, s.dh, omega, spec, {cplx(0.0, 0.5)});
  CHECK(cp[0].measured_grad == 3.0);
  CHECK(cp[0].r == doctest::Approx(0.5));
  CHECK(cp[0].pass);
  CHECK(certificates_report("t", cp).passed());

  const auto ll = loglog_example();
  const auto sl = sample_entry(ll, g);
  CHECK(kind_of([&] { gradient_bound_check(sl.h, sl.dh, ll.domain, parse_structure("loglog"), {cplx(0.1)}); }) ==
        ErrorKind::hypothesis);
}

TEST_CASE("model_bound_check examples") {
  GridSpec g{2.0, 128};
  const auto omega = domain::unit_disk();
  const Region off = [](cplx z) { return std::abs(z) >= 1.0; };
  const cplx c(0.7, -0.2);
  const auto h = sample(g, [c](cplx z) { return c * z; }, off);
  const auto zero_phi = sample(g, [](cplx) { return cplx(0.0); }, off);
  const auto cert = model_bound_check(h, wirtinger(h, Scheme::central4), zero_phi, omega, {cplx(0.0)});
  CHECK(cert[0].pass);
  CHECK(cert[0].bound >= 13.0 * 2.0 * std::abs(c) * 0.99);

  // Hopf residual gate
  const auto wrong_phi = sample(g, [](cplx) { return cplx(1.0); }, off);
  CHECK(kind_of([&] { model_bound_check(h, wirtinger(h, Scheme::central4), wrong_phi, omega, {cplx(0.0)}); }) ==
        ErrorKind::precondition);

  const auto cr = cuberoot_example();
  GridSpec gc{2.0, 512};
  const auto s = sample_entry(cr, gc);
  Region coff = [&cr](cplx z) { return !cr.domain.contains(z); };
  coff = region::unite(coff, [&](cplx z) { return cr.singular(z, cr.mask_cells * gc.spacing()); });
  const auto phi = sample(gc, cr.hopf, coff);
  const auto pts = interior_points(cr.domain, 30, 8 * gc.spacing(), 2,
                                   [&](cplx z) { return cr.singular(z, 4 * gc.spacing()); });
  for (const auto& k : model_bound_check(s.h, s.dh, phi, cr.domain, pts)) CHECK(k.pass);
}

TEST_CASE("boundary_limsup examples") {
  std::vector<double> radii;
  for (int k = 2; k <= 14; ++k) radii.push_back(std::ldexp(1.0, -k));

  const auto id = boundary_limsup([](cplx) { return 1.0; }, domain::unit_disk(), 1.0, -1.0, radii);
  for (std::size_t k = 0; k < radii.size(); ++k) CHECK(id[k] == doctest::Approx(radii[k]));

  // toward 0 on the half-disk: bounded, no limit
  const auto hd = halfdisk_example();
  auto grad = [&hd](cplx z) { return std::abs(hd.h_z(z)) + std::abs(hd.h_zbar(z)); };
  std::vector<double> geo;
  for (int k = 0; k < 40; ++k) geo.push_back(0.4 * std::exp(-0.5 * k));
  const auto v = boundary_limsup(grad, hd.domain, 0.0, 1.0, geo);
  double tail_max = 0.0, tail_min = INFINITY;
  for (std::size_t k = 20; k < v.size(); ++k) {
    tail_max = std::max(tail_max, v[k]);
    tail_min = std::min(tail_min, v[k]);
  }
  CHECK(tail_max > 0.5);
  CHECK(tail_max <= 1.0 + 1e-6);
  CHECK(tail_min < 0.2);

  // cube-root map toward the top of its circle
  const auto cr = cuberoot_example();
  auto gc = [&cr](cplx z) { return std::abs(cr.h_z(z)) + std::abs(cr.h_zbar(z)); };
  const auto w = boundary_limsup(gc, cr.domain, cplx(1.0, 0.5), cplx(0.0, -1.0), radii);
  for (std::size_t k = 1; k < w.size(); ++k) CHECK(w[k] < w[k - 1]);
  CHECK(w.back() < 1e-3);

  CHECK(kind_of([&] { boundary_limsup(gc, cr.domain, cplx(1.0, 0.5), cplx(0.0), radii); }) == ErrorKind::precondition);
  CHECK(kind_of([&] { boundary_limsup(gc, cr.domain, cplx(1.0, 0.5), cplx(0.0, -1.0), {0.1, 0.2}); }) ==
        ErrorKind::precondition);
}

TEST_CASE("interior_points respects margin and avoid set") {
  const auto omega = domain::half_disk();
  const Region avoid = region::disk(0.0, 0.3);
  const auto pts = interior_points(omega, 200, 0.05, 1, avoid);
  CHECK(pts.size() == 200);
  for (cplx z : pts) {
    CHECK(omega.contains(z));
    CHECK(omega.distance(z) >= 0.05);
    CHECK_FALSE(avoid(z));
  }
  CHECK(pts == interior_points(omega, 200, 0.05, 1, avoid));
}

}  // TEST_SUITE
