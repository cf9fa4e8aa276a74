#include "innerlip/selftest.hpp"

#include <cmath>
#include <random>

#include "innerlip/analysis.hpp"
#include "innerlip/gallery.hpp"
#include "innerlip/structure.hpp"

namespace innerlip {

ComplexField test_density(const GridSpec& grid) {
  auto w = sample(grid, [](cplx z) {
    const double q = std::norm(z) / 4.0;
    return q < 1.0 ? std::pow(1.0 - q, 3) * (1.0 + 0.5 * z + cplx(0.0, 0.3) * z * z) : cplx(0.0);
  });
  w.mark_supported_in_2D();
  return w;
}

VerificationReport transform_identity_report(const GridSpec& grid, const TransformOptions& opt, std::size_t probes,
                                             std::uint64_t seed) {
  grid.validate();
  VerificationReport rep("transforms n=" + std::to_string(grid.n));
  const ComplexField w = test_density(grid);

  rep.add_le("d_zbar C w = w (relative L2)", cauchy_identity_residual(w, opt), 1e-2);

  TransformOptions per = opt;
  per.periodization = Periodization::periodic;
  const ComplexField dz = wirtinger(cauchy(w, per), Scheme::spectral).d_z;
  const ComplexField s = beurling(w, per);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    num += std::norm(dz[i] - s[i]);
    den += std::norm(s[i]);
  }
  rep.add_le("S = d_z C (periodic, relative L2)", std::sqrt(num / std::max(den, 1e-300)), 1e-8);

  const ComplexField c = cauchy(w, opt), b = beurling(w, opt);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::vector<cplx> pts;
  std::vector<std::size_t> idx;
  while (pts.size() < probes) {
    const std::size_t i = pick(rng);
    const cplx z = grid.point(i);
    if (std::abs(z) <= 2.0 - 4.0 * grid.spacing()) {
      pts.push_back(z);
      idx.push_back(i);
    }
  }
  const auto qc = quadrature_oracle(w, Kernel::cauchy, pts);
  const auto qs = quadrature_oracle(w, Kernel::beurling, pts);
  double mc = 0.0, ms = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    mc = std::max(mc, std::abs(qc[k]));
    ms = std::max(ms, std::abs(qs[k]));
  }
  double ec = 0.0, es = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    ec = std::max(ec, std::abs(c[idx[k]] - qc[k]) / std::max(std::abs(qc[k]), 0.1 * mc));
    es = std::max(es, std::abs(b[idx[k]] - qs[k]) / std::max(std::abs(qs[k]), 0.1 * ms));
  }
  const std::string note = std::to_string(probes) + " probes, relative to max(|oracle|, 0.1 max|oracle|)";
  rep.add_le("Cauchy FFT vs quadrature", ec, 1e-2, note);
  rep.add_le("Beurling FFT vs quadrature", es, 1e-2, note);
  return rep;
}

VerificationReport gallery_report(const GridSpec& grid) {
  grid.validate();
  VerificationReport rep("gallery n=" + std::to_string(grid.n));
  for (const auto& e : gallery()) rep.merge(check_entry(e, grid));
  return rep;
}

VerificationReport structure_report(std::uint64_t seed) {
  VerificationReport rep("structures");
  for (const char* s : {"rational:6,-2", "hopf:phi=const:-1", "hopf:phi=z", "affine:a=0.5,b=0.25"})
    rep.merge(verify_structure(parse_structure(s), 2000, seed));
  return rep;
}

}  // namespace innerlip
