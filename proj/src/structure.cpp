#include "innerlip/structure.hpp"

#include <cmath>
#include <memory>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "innerlip/error.hpp"
#include "innerlip/transforms.hpp"

namespace innerlip {

void StructureSpec::require_hypothesis(const std::string& who) const {
  if (!hoelder_hypothesis()) {
    std::ostringstream os;
    os << who << ": structure '" << name << "' declares Hoelder exponent alpha=" << alpha
       << "; the gradient bound needs 0 < alpha <= 1 (continuity alone is not enough)";
    fail(ErrorKind::hypothesis, os.str());
  }
}

void OperatorConstants::validate() const {
  if (!(p >= 3.0)) fail(ErrorKind::precondition, "operator constants need p = 3/alpha >= 3");
  if (!(S_p > 1.0)) fail(ErrorKind::precondition, "operator constants need S_p > 1");
  if (!(B_p > 0.0) || !(C_p > 0.0)) fail(ErrorKind::precondition, "operator constants need B_p, C_p > 0");
}

namespace {

GridSpec calibration_grid() { return GridSpec{4.0, 128}; }

ComplexField bump(const GridSpec& g, double r, cplx center) {
  ComplexField w = sample(g, [&](cplx z) {
    const double s = std::norm(z - center) / (r * r);
    return s < 1.0 ? cplx((1.0 - s) * (1.0 - s)) : cplx(0.0);
  });
  w.mark_supported_in_2D();
  return w;
}

}  // namespace

double measure_besov_embedding(double alpha, double p, double S_p) {
  const GridSpec g = calibration_grid();
  double best = 0.0;
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const ComplexField w = bump(g, r, 0.0);
    const double norm = besov_estimate(w, alpha, p).total();
    const ComplexField s = beurling(w);
    const double num = std::max(w.max_abs(), lp_norm(s, INFINITY, region::disk(0.0, 2.0)) / S_p);
    best = std::max(best, num / norm);
  }
  return best;
}

double measure_cauchy_decay(double p) {
  const GridSpec g{4.0, 256};
  ComplexField chi = cell_average_indicator(g, region::disk(0.0, 1.0), 8);
  chi.mark_supported_in_2D();
  return cauchy_decay_check(chi, p);
}

OperatorConstants default_constants(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::hypothesis, "operator constants need 0 < alpha <= 1");
  static std::mutex mu;
  static std::map<double, OperatorConstants> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(alpha); it != cache.end()) return it->second;
  OperatorConstants c;
  c.p = 3.0 / alpha;
  c.S_p = c.p - 1.0;
  c.B_p = 2.0 * measure_besov_embedding(alpha, c.p, c.S_p);
  c.C_p = 2.0 * measure_cauchy_decay(c.p);
  c.provenance = "S_p=p-1; B_p, C_p = 2 x measured probe ratios (n=128/256, A=4)";
  cache.emplace(alpha, c);
  return c;
}

cplx ExtendedStructure::operator()(cplx z, cplx xi) const {
  const double r = std::abs(z);
  if (r <= 1.0) return base.H(z, xi);
  if (r >= 2.0) return 0.0;
  return (2.0 - r) * base.H(1.0 / std::conj(z), xi);
}

ExtendedStructure extend(const StructureSpec& spec) { return ExtendedStructure{spec}; }

std::array<double, 5> lambda_terms(const StructureSpec& s, const OperatorConstants& c) {
  return {std::sqrt(16.0 * c.S_p), std::sqrt(81.0 * c.S_p * s.L), 120.0 * c.S_p * c.B_p * s.M, 3.0 * s.R,
          32.0 * c.C_p * s.L};
}

double lambda_zero(const StructureSpec& s, const OperatorConstants& c) {
  const auto t = lambda_terms(s, c);
  double m = 0.0;
  for (double v : t) m = std::max(m, v);
  return m;
}

double antiholomorphic_bound(const StructureSpec& s) { return s.M + std::sqrt(s.L) + s.R; }

StructureSpec hopf_structure(const HopfData& d) {
  if (!std::isfinite(d.sup) || !std::isfinite(d.holder)) fail(ErrorKind::precondition, "hopf_structure: unbounded phi");
  StructureSpec s;
  s.name = "hopf:phi=" + d.name;
  auto phi = d.phi;
  s.H = [phi](cplx z, cplx xi) { return std::conj(phi(z)) / std::conj(xi); };
  s.L = d.sup;
  s.R = std::sqrt(d.sup);
  s.alpha = d.alpha;
  s.M = s.R + (s.R > 0.0 ? d.holder / s.R : 0.0);
  if (s.R == 0.0 && d.holder > 0.0) fail(ErrorKind::precondition, "hopf_structure: phi vanishes but has nonzero Hoelder constant");
  return s;
}

StructureSpec hopf_structure(const ComplexField& phi) {
  const Region disk = region::disk(0.0, 1.0);
  const double sup = lp_norm(phi, INFINITY, disk);
  if (!std::isfinite(sup)) fail(ErrorKind::precondition, "hopf_structure: unbounded phi sample");
  HopfData d;
  d.name = "field";
  d.sup = sup;
  d.holder = lipschitz_estimate(phi, disk, 2.0 * phi.grid().spacing());
  d.alpha = 1.0;
  auto field = std::make_shared<ComplexField>(phi);
  d.phi = [field](cplx z) { return interpolate(*field, z); };
  return hopf_structure(d);
}

StructureSpec rational_structure(cplx a, cplx b, double R) {
  if (!(R > 0.0)) fail(ErrorKind::usage, "rational structure needs R > 0");
  StructureSpec s;
  std::ostringstream os;
  os << "rational:a=" << format_double(a.real()) << (a.imag() != 0 ? "+" + format_double(a.imag()) + "i" : "")
     << ",b=" << format_double(b.real()) << (b.imag() != 0 ? "+" + format_double(b.imag()) + "i" : "")
     << ",R=" << format_double(R);
  s.name = os.str();
  s.H = [a, b](cplx, cplx xi) { return a / xi + b; };
  s.L = std::abs(a);
  s.M = std::abs(a) / R + std::abs(b);
  s.R = R;
  s.alpha = 1.0;
  s.z_independent = true;
  return s;
}

StructureSpec affine_structure(cplx a, cplx b) {
  StructureSpec s;
  s.name = "affine:a=" + format_double(a.real()) + ",b=" + format_double(b.real());
  s.H = [a, b](cplx z, cplx) { return a + b * z; };
  s.L = 0.0;
  s.M = std::abs(a) + 2.0 * std::abs(b);
  s.R = 0.0;
  s.alpha = 1.0;
  return s;
}

StructureSpec zero_structure() {
  StructureSpec s;
  s.name = "zero";
  s.H = [](cplx, cplx) { return cplx(0.0); };
  s.z_independent = true;
  return s;
}

namespace {

// Hopf product of z loglog(1/|z|^2) on |z| < 1/2: continuous, but with no Hoelder modulus at 0.
StructureSpec loglog_structure() {
  HopfData d;
  d.name = "loglog";
  d.phi = [](cplx z) {
    const double r = std::min(std::abs(z), 0.5);
    if (r == 0.0) return cplx(0.0);
    const double l = std::log(1.0 / (r * r));
    const cplx dir = std::conj(z) / z;
    return (std::log(l) - 1.0 / l) / l * dir;
  };
  d.sup = 0.5;  // (log l - 1/l)/l <= 1/e, rounded up
  d.holder = 0.0;
  d.alpha = 0.0;
  StructureSpec s = hopf_structure(d);
  s.name = "loglog";
  s.alpha = 0.0;
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& t) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::usage, "not a number: '" + t + "'");
  }
  if (used != t.size()) fail(ErrorKind::usage, "not a number: '" + t + "'");
  return v;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) fail(ErrorKind::usage, "empty complex literal");
  if (t.back() != 'i') return parse_real(t);
  t.pop_back();
  // split at the last sign that is not part of an exponent and not leading
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string::npos) return {0.0, imag_part(t)};
  return {parse_real(t.substr(0, split)), imag_part(t.substr(split))};
}

StructureSpec parse_structure(const std::string& text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string() : t.substr(colon + 1);

  std::map<std::string, std::string> kv;
  std::vector<std::string> positional;
  {
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        positional.push_back(item);
      else
        kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
  }
  auto get = [&](const std::string& key, std::size_t pos, const std::string& fallback) -> std::string {
    if (auto it = kv.find(key); it != kv.end()) return it->second;
    if (pos < positional.size()) return positional[pos];
    return fallback;
  };

  if (kind == "zero") return zero_structure();
  if (kind == "loglog") return loglog_structure();
  if (kind == "rational") {
    const std::string a = get("a", 0, ""), b = get("b", 1, "");
    if (a.empty() || b.empty()) fail(ErrorKind::usage, "rational structure needs a and b: '" + text + "'");
    return rational_structure(parse_complex(a), parse_complex(b), parse_real(get("R", 2, "2")));
  }
  if (kind == "affine") {
    return affine_structure(parse_complex(get("a", 0, "0")), parse_complex(get("b", 1, "0")));
  }
  if (kind == "hopf") {
    std::string phi = get("phi", 0, "");
    if (phi.empty()) fail(ErrorKind::usage, "hopf structure needs phi: '" + text + "'");
    HopfData d;
    if (phi.rfind("const:", 0) == 0) phi = phi.substr(6);
    if (phi == "z") {
      d.name = "z";
      d.phi = [](cplx z) { return z; };
      d.sup = 1.0;
      d.holder = 1.0;
    } else {
      const cplx c = parse_complex(phi);
      d.name = "const:" + phi;
      d.phi = [c](cplx) { return c; };
      d.sup = std::abs(c);
      d.holder = 0.0;
    }
    d.alpha = kv.count("alpha") ? parse_real(kv["alpha"]) : 1.0;
    return hopf_structure(d);
  }
  fail(ErrorKind::usage, "unknown structure '" + kind + "' (expected zero, hopf, rational, affine, loglog)");
}

VerificationReport verify_structure(const StructureSpec& s, std::size_t samples, std::uint64_t seed) {
  if (samples < 100) fail(ErrorKind::precondition, "verify_structure needs at least 100 samples");
  VerificationReport rep("structure " + s.name);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto disk_point = [&] {
    const double r = std::sqrt(U(rng)), th = 2.0 * std::numbers::pi * U(rng);
    return std::polar(r, th);
  };
  auto xi_point = [&] {
    const double u = U(rng);
    const double mod = s.R + (9.0 * s.R + 10.0) * u * u + 1e-9 * (1.0 + s.R);
    return std::polar(mod, 2.0 * std::numbers::pi * U(rng));
  };
  constexpr double tol = 1e-6;
  double sup_ratio = 0.0, lip_ratio = 0.0, hol_ratio = 0.0;
  auto ratio = [](double num, double den) {
    if (den > 0.0) return num / den;
    return num <= 1e-13 ? 0.0 : INFINITY;
  };
  for (std::size_t k = 0; k < samples; ++k) {
    const cplx z1 = disk_point(), z2 = disk_point();
    const cplx x1 = xi_point(), x2 = xi_point();
    const cplx h11 = s.H(z1, x1);
    sup_ratio = std::max(sup_ratio, ratio(std::abs(h11), s.M));
    lip_ratio = std::max(lip_ratio, ratio(std::abs(h11 - s.H(z1, x2)), s.L * std::abs(1.0 / x1 - 1.0 / x2)));
    if (s.hoelder_hypothesis())
      hol_ratio = std::max(hol_ratio, ratio(std::abs(h11 - s.H(z2, x1)), s.M * std::pow(std::abs(z1 - z2), s.alpha)));
  }
  rep.set_meta("L", format_double(s.L));
  rep.set_meta("M", format_double(s.M));
  rep.set_meta("alpha", format_double(s.alpha));
  rep.set_meta("R", format_double(s.R));
  rep.add_le("sup_ratio", sup_ratio, 1.0 + tol, "max |H| / M");
  rep.add_le("xi_lipschitz_ratio", lip_ratio, 1.0 + tol, "max |H(z,x1)-H(z,x2)| / (L |1/x1-1/x2|)");
  if (s.hoelder_hypothesis())
    rep.add_le("z_hoelder_ratio", hol_ratio, 1.0 + tol, "max |H(z1,x)-H(z2,x)| / (M |z1-z2|^alpha)");
  else
    rep.add_flag("z_hoelder_hypothesis", false, "declared alpha outside (0,1]");
  return rep;
}

}  // namespace innerlip
