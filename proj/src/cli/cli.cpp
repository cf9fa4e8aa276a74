#include "innerlip/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "innerlip/cf64.hpp"

namespace innerlip::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T v{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) fail(ErrorKind::usage, "invalid value for " + key + ": '" + value + "'");
  return v;
}

std::string canonical_key(std::string k) {
  for (char& c : k)
    if (c == '-') c = '_';
  return k;
}

}  // namespace

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = canonical_key(raw_key);
  if (key == "structure") structure = value;
  else if (key == "h") h = value;
  else if (key == "A") A = parse_number<double>(key, value);
  else if (key == "n") n = parse_number<std::size_t>(key, value);
  else if (key == "tol") tol = parse_number<double>(key, value);
  else if (key == "max_iter") max_iter = parse_number<int>(key, value);
  else if (key == "rho") rho = value;
  else if (key == "m") m = parse_number<int>(key, value);
  else if (key == "out") out = value;
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "pairs") pairs = parse_number<std::size_t>(key, value);
  else if (key == "fault_multiplier_scale") fault_multiplier_scale = parse_number<double>(key, value);
  else fail(ErrorKind::usage, "unknown configuration key '" + raw_key + "'");
}

void RunConfig::validate() const {
  if (n != 0 && (n < 16 || (n & (n - 1)) != 0))
    fail(ErrorKind::usage, "grid size n=" + std::to_string(n) + " must be a power of two >= 16");
  if (!(A > 0.0) || !std::isfinite(A)) fail(ErrorKind::usage, "A must be positive");
  if (!(tol >= 0.0)) fail(ErrorKind::usage, "tol must be >= 0");
  if (max_iter < 1) fail(ErrorKind::usage, "max_iter must be >= 1");
  if (m != 0 && m < 8) fail(ErrorKind::usage, "m must be >= 8");
  if (pairs < 1) fail(ErrorKind::usage, "pairs must be >= 1");
  if (!(fault_multiplier_scale > 0.0)) fail(ErrorKind::usage, "fault multiplier scale must be positive");
  if (rho != "auto") {
    const double r = parse_number<double>("rho", rho);
    if (!(r > 0.0)) fail(ErrorKind::usage, "rho must be positive or 'auto'");
  }
}

std::map<std::string, std::string> parse_config(const std::string& text, const std::string& source) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) fail(ErrorKind::usage, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::usage, where + ": empty key");
    kv[key] = value;
  }
  return kv;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return 2;
    case ErrorKind::io: return 3;
    case ErrorKind::convergence: return 4;
    case ErrorKind::precondition:
    case ErrorKind::hypothesis: return 1;
  }
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inner-variational Lipschitz analysis: transforms, good solutions, certificates"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  app.set_help_all_flag("--help-all");

  // Every flag is captured as text, then applied over the config file.
  std::map<std::string, std::string> flags;
  std::vector<std::pair<CLI::Option*, std::string>> bound;
  std::string config_path;
  auto opt = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
    bound.emplace_back(sub->add_option(name, flags[key], help), key);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value configuration file");
    opt(sub, "--n", "n", "grid points per axis (power of two >= 16)");
    opt(sub, "--A", "A", "box half-width");
    opt(sub, "--out", "out", "output directory");
    opt(sub, "--seed", "seed", "sampling seed");
  };

  auto* selftest = app.add_subcommand("selftest", "transform identities, gallery checks, structure sampling");
  common(selftest);
  opt(selftest, "--fault-multiplier-scale", "fault_multiplier_scale", "scale the Fourier multipliers (test hook)");

  auto* solve = app.add_subcommand("solve", "good-solution family on |lambda| = rho");
  common(solve);
  opt(solve, "--structure", "structure", "structure, e.g. rational:6,-2 or hopf:phi=const:-1");
  opt(solve, "--rho", "rho", "family radius or 'auto' (lambda_0)");
  opt(solve, "--m", "m", "family size");
  opt(solve, "--tol", "tol", "fixed-point tolerance (0: default)");
  opt(solve, "--max-iter", "max_iter", "iteration cap");

  auto* verify = app.add_subcommand("verify", "certificates for a gallery entry or a CF64 field");
  common(verify);
  opt(verify, "--h", "h", "gallery:NAME or path to a .cf64 file");
  opt(verify, "--structure", "structure", "structure solved by h (defaults to the entry's)");
  opt(verify, "--m", "m", "family size for the degree checks");
  opt(verify, "--pairs", "pairs", "sampled pairs for the injectivity check");

  std::vector<std::string> report_dirs;
  auto* report = app.add_subcommand("report", "summarize report CSVs of one or more run directories");
  report->add_option("dirs", report_dirs, "run directories")->required();
  opt(report, "--out", "out", "also write the summary CSV here");

  auto* gal = app.add_subcommand("gallery", "closed-form examples");
  gal->require_subcommand(1);
  auto* glist = gal->add_subcommand("list", "list entries");
  std::string dump_name;
  auto* gdump = gal->add_subcommand("dump", "write h, h_z, h_zbar as CF64 plus the check CSV");
  gdump->add_option("name", dump_name, "entry name")->required();
  common(gdump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty())
      for (const auto& [k, v] : parse_config(read_file(config_path), config_path)) cfg.set(k, v);
    for (const auto& [o, key] : bound)
      if (o->count() > 0) cfg.set(key, flags[key]);
    cfg.validate();

    if (*selftest) {
      cfg.command = "selftest";
      return cmd_selftest(cfg, out);
    }
    if (*solve) {
      cfg.command = "solve";
      return cmd_solve(cfg, out);
    }
    if (*verify) {
      cfg.command = "verify";
      return cmd_verify(cfg, out);
    }
    if (*report) {
      cfg.command = "report";
      return cmd_report(report_dirs, cfg, out);
    }
    if (*glist) return cmd_gallery_list(out);
    cfg.command = "gallery dump";
    return cmd_gallery_dump(dump_name, cfg, out);
  } catch (const Error& e) {
    err << "innerlip: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "innerlip: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace innerlip::cli
