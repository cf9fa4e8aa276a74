#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "innerlip/analysis.hpp"
#include "innerlip/cf64.hpp"
#include "innerlip/gallery.hpp"
#include "innerlip/selftest.hpp"
#include "innerlip/solver.hpp"
#include "innerlip/structure.hpp"

namespace innerlip::cli {

namespace fs = std::filesystem;

namespace {

GridSpec grid_of(const RunConfig& cfg, std::size_t default_n) {
  GridSpec g{cfg.A, cfg.n ? cfg.n : default_n};
  g.validate();
  return g;
}

std::string out_dir(const RunConfig& cfg) { return cfg.out.empty() ? std::string("run") : cfg.out; }

std::string file_safe(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
  return s;
}

std::string config_echo(const RunConfig& c) {
  std::ostringstream os;
  os << "# effective configuration\n"
     << "command = " << c.command << '\n';
  if (!c.structure.empty()) os << "structure = " << c.structure << '\n';
  if (!c.h.empty()) os << "h = " << c.h << '\n';
  os << "A = " << format_double(c.A) << '\n'
     << "n = " << c.n << '\n'
     << "tol = " << format_double(c.tol) << '\n'
     << "max_iter = " << c.max_iter << '\n'
     << "rho = " << c.rho << '\n'
     << "m = " << c.m << '\n'
     << "seed = " << c.seed << '\n'
     << "pairs = " << c.pairs << '\n';
  return os.str();
}

void failures_to(std::ostream& out, const VerificationReport& rep) {
  for (const auto& c : rep.checks())
    if (!c.pass) out << "FAILED: " << rep.title() << ": " << c.name << '\n';
}

/// Points at least 8 delta inside the domain and clear of masked samples.
std::vector<cplx> certificate_points(const Domain& omega, const ComplexField& h, const Region& singular,
                                     std::size_t count, std::uint64_t seed) {
  const GridSpec& g = h.grid();
  const double d = g.spacing();
  Region avoid = [&h, &g, d, singular](cplx z) {
    if (singular && singular(z)) return true;
    if (!h.has_mask()) return false;
    for (int dy = -3; dy <= 3; ++dy)
      for (int dx = -3; dx <= 3; ++dx)
        if (h.excluded(g.nearest_index(z + cplx(dx * d, dy * d)))) return true;
    return false;
  };
  return interior_points(omega, count, 8.0 * d, seed, avoid);
}

/// Difference map, distortion, degree and injectivity checks on the unit disk.
void disk_checks(VerificationReport& rep, const ComplexField& h, const FieldPair& dh, const PointFn& hfn,
                 const StructureSpec& spec, const RunConfig& cfg, std::ostream& out) {
  const double lambda0 = lambda_zero(spec, default_constants(spec.alpha));
  const Region disk = region::disk(0.0, 1.0);
  const double N = lp_norm(dh.d_zbar, INFINITY, disk);
  const double required = 4.0 * N + 4.0 * lambda0 + spec.R;
  const ExtendedStructure ext = extend(spec);

  SolverConfig sc;
  sc.grid = h.grid();
  sc.tol = cfg.tol;
  sc.max_iter = cfg.max_iter;
  sc.lambda = required;
  const GoodSolution good = solve_good(ext, sc);
  rep.merge(good_solution_report(good, spec, lambda0));
  const DifferenceMap dm = difference_map(h, dh, good, lambda0, spec.R);
  VerificationReport dist = distortion_check(dm);
  rep.merge(dist);
  out << "difference map at |lambda| = " << format_double(required) << " (4N + 4 lambda0 + R)\n";

  const double sig = sigma(h, dh.d_zbar, lambda0);
  SolverConfig fc = sc;
  fc.grid = GridSpec{h.grid().half_width, std::min<std::size_t>(h.grid().n, 128)};
  const int m = cfg.m ? cfg.m : 128;
  const GoodSolutionFamily fam = solve_family(ext, sig, m, lambda0, fc);
  out << "family: rho = sigma = " << format_double(sig) << ", m = " << m << '\n';

  VerificationReport deg("degree");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto in_third = [&]() {
    const double r = std::sqrt(U(rng)) / 3.0, t = 2.0 * M_PI * U(rng);
    return std::polar(r, t);
  };
  for (int k = 0; k < 10; ++k) {
    const cplx z1 = in_third(), z2 = in_third();
    const WindingResult w = family_winding(fam, z1, z2, hfn(z1) - hfn(z2));
    std::ostringstream name;
    name << "winding pair " << k;
    deg.add_flag(name.str(), w.degree == 1 && w.certified,
                 "degree " + std::to_string(w.degree) + ", min |F-a| " + format_double(w.min_modulus) + ", max step " +
                     format_double(w.max_step));
  }
  rep.merge(deg);
  rep.merge(injectivity_check(fam, hfn, cfg.pairs, cfg.seed, sig));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  return cells;
}

const std::string report_header = "report,check,measured,bound,relation,pass,note";

std::vector<Check> load_checks(const fs::path& dir, std::vector<std::string>& keys) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorKind::io, dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(dir))
    if (ent.is_regular_file() && ent.path().extension() == ".csv") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  std::vector<Check> checks;
  for (const auto& f : files) {
    std::istringstream in(read_file(f));
    std::string line;
    if (!std::getline(in, line) || line.rfind(report_header, 0) != 0) continue;
    int lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto cells = split_csv_line(line);
      if (cells.size() != 7)
        fail(ErrorKind::io, f.string() + ":" + std::to_string(lineno) + ": expected 7 columns, got " +
                                std::to_string(cells.size()));
      Check c;
      c.name = cells[0].empty() ? cells[1] : cells[0] + "/" + cells[1];
      c.measured = std::strtod(cells[2].c_str(), nullptr);
      c.bound = std::strtod(cells[3].c_str(), nullptr);
      c.relation = cells[4];
      c.pass = cells[5] == "1";
      c.note = cells[6];
      keys.push_back(c.name);
      checks.push_back(std::move(c));
    }
  }
  if (checks.empty()) fail(ErrorKind::io, dir.string() + ": no report CSV files");
  return checks;
}

double margin_of(const Check& c) {
  const double scale = std::max(std::abs(c.bound), 1e-300);
  if (c.relation == "<=") return (c.bound - c.measured) / scale;
  if (c.relation == ">=") return (c.measured - c.bound) / scale;
  return NAN;
}

}  // namespace

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  const GridSpec g = grid_of(cfg, 512);
  if (g.half_width < 4.0) fail(ErrorKind::usage, "selftest needs A >= 4");
  TransformOptions opt;
  opt.multiplier_scale = cfg.fault_multiplier_scale;
  VerificationReport all("selftest");
  const VerificationReport parts[] = {transform_identity_report(g, opt, 20, cfg.seed), gallery_report(g),
                                      structure_report(cfg.seed)};
  for (const auto& r : parts) {
    out << r.to_text();
    all.merge(r);
  }
  if (!cfg.out.empty()) write_file_atomic(fs::path(cfg.out) / "selftest.csv", all.to_csv());
  failures_to(out, all);
  out << "selftest: " << (all.passed() ? "PASS" : "FAIL") << " (" << all.checks().size() - all.failures() << "/"
      << all.checks().size() << ")\n";
  return all.passed() ? 0 : 1;
}

int cmd_solve(const RunConfig& cfg_in, std::ostream& out) {
  RunConfig cfg = cfg_in;
  if (cfg.structure.empty()) fail(ErrorKind::usage, "solve: --structure is required");
  const GridSpec g = grid_of(cfg, 256);
  cfg.n = g.n;
  if (g.half_width < 4.0) fail(ErrorKind::usage, "solve needs A >= 4");
  const StructureSpec spec = parse_structure(cfg.structure);
  spec.require_hypothesis("solve");
  const double lambda0 = lambda_zero(spec, default_constants(spec.alpha));
  double rho = lambda0;
  if (cfg.rho != "auto") {
    rho = std::stod(cfg.rho);
    if (rho < lambda0) fail(ErrorKind::usage, "rho = " + cfg.rho + " is below lambda_0 = " + format_double(lambda0));
  }
  if (!cfg.m) cfg.m = 64;

  SolverConfig sc;
  sc.grid = g;
  sc.tol = cfg.tol;
  sc.max_iter = cfg.max_iter;
  const GoodSolutionFamily fam = solve_family(extend(spec), rho, cfg.m, lambda0, sc);

  const fs::path dir = out_dir(cfg);
  std::ostringstream csv;
  csv << "lambda_re,lambda_im,iterations,residual,max_rate\n";
  double worst_rate = 0.0, worst_res = 0.0;
  for (std::size_t j = 0; j < fam.solutions.size(); ++j) {
    const GoodSolution& s = fam.solutions[j];
    std::ostringstream stem;
    stem << "member_" << std::setw(3) << std::setfill('0') << j;
    cf64::write(dir / (stem.str() + "_omega.cf64"), s.omega);
    cf64::write(dir / (stem.str() + "_f.cf64"), s.f);
    cf64::write(dir / (stem.str() + "_fz.cf64"), s.f_z);
    csv << format_double(s.lambda.real()) << ',' << format_double(s.lambda.imag()) << ',' << s.iterations << ','
        << format_double(s.residual) << ',' << format_double(s.max_rate()) << '\n';
    worst_rate = std::max(worst_rate, s.max_rate());
    worst_res = std::max(worst_res, s.residual);
  }
  write_file_atomic(dir / "solve.csv", csv.str());

  VerificationReport rep = family_report(fam, spec);
  rep.merge(verify_structure(spec, 2000, cfg.seed));
  rep.set_meta("lambda0", format_double(lambda0));
  write_file_atomic(dir / "report.csv", rep.to_csv());
  write_file_atomic(dir / "run.cfg", config_echo(cfg));

  out << "structure " << spec.name << ": L = " << format_double(spec.L) << ", M = " << format_double(spec.M)
      << ", R = " << format_double(spec.R) << ", lambda0 = " << format_double(lambda0) << '\n'
      << "family rho = " << format_double(rho) << ", m = " << cfg.m << ", n = " << g.n << '\n'
      << "max contraction rate " << format_double(worst_rate) << ", max residual " << format_double(worst_res)
      << ", continuity ratio " << format_double(fam.continuity_ratio) << '\n'
      << "wrote " << (dir / "solve.csv").string() << ", " << (dir / "report.csv").string() << " and "
      << 3 * fam.solutions.size() << " CF64 fields\n";
  failures_to(out, rep);
  out << "solve: " << (rep.passed() ? "PASS" : "FAIL") << '\n';
  return rep.passed() ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg_in, std::ostream& out) {
  RunConfig cfg = cfg_in;
  if (cfg.h.empty()) fail(ErrorKind::usage, "verify: --h gallery:NAME or --h FILE.cf64 is required");
  const fs::path dir = out_dir(cfg);
  VerificationReport rep("verify " + cfg.h);

  const bool from_gallery = cfg.h.rfind("gallery:", 0) == 0;
  GalleryEntry e;
  ComplexField h;
  FieldPair dh;
  Domain omega = domain::unit_disk();
  Region singular;
  PointFn hfn;
  if (from_gallery) {
    e = gallery_entry(cfg.h.substr(8));
    const GridSpec g = grid_of(cfg, 512);
    cfg.n = g.n;
    rep.merge(check_entry(e, g));
    EntrySamples s = sample_entry(e, g);
    h = std::move(s.h);
    dh = std::move(s.dh);
    omega = e.domain;
    const double r = (e.mask_cells + 4.0) * g.spacing();
    if (e.singular) singular = [sing = e.singular, r](cplx z) { return sing(z, r); };
    hfn = e.h;
  } else {
    h = cf64::read(cfg.h);
    if (cfg.n && cfg.n != h.grid().n) fail(ErrorKind::usage, "--n disagrees with the grid stored in " + cfg.h);
    cfg.n = h.grid().n;
    dh = wirtinger(h, Scheme::central4);
    hfn = [&h](cplx z) { return interpolate(h, z); };
  }

  const std::string stext = !cfg.structure.empty() ? cfg.structure : e.structure;
  if (!from_gallery && stext.empty()) fail(ErrorKind::usage, "verify: a CF64 input needs --structure");
  if (!stext.empty()) {
    cfg.structure = stext;
    const StructureSpec spec = parse_structure(stext);
    if (!spec.hoelder_hypothesis()) {
      try {
        spec.require_hypothesis("verify");
      } catch (const Error& err) {
        rep.add_flag("Hoelder hypothesis of the structure", false, err.what());
        rep.set_meta("refused", "true");
        write_file_atomic(dir / "verify.csv", rep.to_csv());
        write_file_atomic(dir / "run.cfg", config_echo(cfg));
        out << rep.to_text() << "verify: REFUSED (" << err.what() << ")\n";
        return 1;
      }
    }
    const auto pts = certificate_points(omega, h, singular, 100, cfg.seed);
    rep.merge(certificates_report("gradient bound", gradient_bound_check(h, dh, omega, spec, pts)));
    if (omega.name == "unit_disk") disk_checks(rep, h, dh, hfn, spec, cfg, out);
  }
  if (from_gallery && e.hopf) {
    Region off = [&omega](cplx z) { return !omega.contains(z); };
    if (singular) off = region::unite(off, singular);
    const ComplexField phi = sample(h.grid(), e.hopf, off);
    const auto pts = certificate_points(omega, h, singular, 100, cfg.seed + 1);
    rep.merge(certificates_report("model bound", model_bound_check(h, dh, phi, omega, pts)));
  }

  write_file_atomic(dir / "verify.csv", rep.to_csv());
  write_file_atomic(dir / "run.cfg", config_echo(cfg));
  out << rep.to_text();
  failures_to(out, rep);
  out << "verify: " << (rep.passed() ? "PASS" : "FAIL") << '\n';
  return rep.passed() ? 0 : 1;
}

int cmd_report(const std::vector<std::string>& dirs, const RunConfig& cfg, std::ostream& out) {
  std::vector<std::vector<Check>> runs;
  std::vector<std::string> order;
  for (const auto& d : dirs) runs.push_back(load_checks(d, order));
  // first-seen order, deduplicated
  std::vector<std::string> keys;
  for (const auto& k : order)
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);

  std::ostringstream csv;
  bool all_pass = true;
  if (runs.size() == 1) {
    csv << "check,measured,relation,bound,margin,pass\n";
    for (const auto& c : runs[0]) {
      csv << csv_escape(c.name) << ',' << format_double(c.measured) << ',' << c.relation << ','
          << format_double(c.bound) << ',' << format_double(margin_of(c)) << ',' << (c.pass ? 1 : 0) << '\n';
      all_pass = all_pass && c.pass;
    }
  } else {
    csv << "check,relation,bound";
    for (std::size_t r = 0; r < runs.size(); ++r) csv << ",measured_" << r << ",margin_" << r << ",pass_" << r;
    csv << '\n';
    std::vector<std::map<std::string, const Check*>> idx(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r)
      for (const auto& c : runs[r]) idx[r].emplace(c.name, &c);
    for (const auto& k : keys) {
      const Check* any = nullptr;
      for (const auto& m : idx)
        if (auto it = m.find(k); it != m.end() && !any) any = it->second;
      csv << csv_escape(k) << ',' << any->relation << ',' << format_double(any->bound);
      for (const auto& m : idx) {
        auto it = m.find(k);
        if (it == m.end()) {
          csv << ",,,";
          continue;
        }
        const Check& c = *it->second;
        csv << ',' << format_double(c.measured) << ',' << format_double(margin_of(c)) << ',' << (c.pass ? 1 : 0);
        all_pass = all_pass && c.pass;
      }
      csv << '\n';
    }
  }
  out << csv.str();
  std::size_t total = 0, failed = 0;
  for (const auto& r : runs)
    for (const auto& c : r) {
      ++total;
      failed += !c.pass;
    }
  out << "# " << dirs.size() << " run(s), " << total << " checks, " << failed << " failed\n";
  if (!cfg.out.empty()) write_file_atomic(cfg.out, csv.str());
  return all_pass ? 0 : 1;
}

int cmd_gallery_list(std::ostream& out) {
  for (const auto& e : gallery()) {
    out << e.name << "  " << e.summary;
    if (!e.structure.empty()) out << "  [structure " << e.structure << "]";
    out << '\n';
  }
  return 0;
}

int cmd_gallery_dump(const std::string& name, const RunConfig& cfg, std::ostream& out) {
  const GalleryEntry e = gallery_entry(name);
  const GridSpec g = grid_of(cfg, 512);
  const EntrySamples s = sample_entry(e, g);
  const fs::path dir = out_dir(cfg);
  const std::string stem = file_safe(e.name);
  cf64::write(dir / (stem + "_h.cf64"), s.h);
  cf64::write(dir / (stem + "_hz.cf64"), s.dh.d_z);
  cf64::write(dir / (stem + "_hzbar.cf64"), s.dh.d_zbar);
  const VerificationReport rep = check_entry(e, g);
  write_file_atomic(dir / (stem + "_checks.csv"), rep.to_csv());
  out << rep.to_text() << "wrote " << (dir / (stem + "_{h,hz,hzbar}.cf64")).string() << " and "
      << (dir / (stem + "_checks.csv")).string() << '\n';
  return rep.passed() ? 0 : 1;
}

}  // namespace innerlip::cli
