#include "util.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "innerlip/cf64.hpp"
#include "innerlip/cli.hpp"

using namespace innerlip;
using testutil::kind_of;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "innerlip");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit code mapping") {
  CHECK(cli::exit_code(ErrorKind::usage) == 2);
  CHECK(cli::exit_code(ErrorKind::io) == 3);
  CHECK(cli::exit_code(ErrorKind::convergence) == 4);
  CHECK(cli::exit_code(ErrorKind::precondition) == 1);
  CHECK(cli::exit_code(ErrorKind::hypothesis) == 1);
}

TEST_CASE("config parsing and validation") {
  const auto kv = cli::parse_config("# comment\n n = 64  # trailing\n\nstructure=rational:6,-2\n", "c.cfg");
  CHECK(kv.at("n") == "64");
  CHECK(kv.at("structure") == "rational:6,-2");
  const std::string msg = testutil::message_of([] { cli::parse_config("n = 64\nbogus line\n", "c.cfg"); });
  CHECK(contains(msg, "c.cfg:2"));
  CHECK(kind_of([] { cli::parse_config("= 3\n"); }) == ErrorKind::usage);

  cli::RunConfig c;
  c.set("max-iter", "12");
  c.set("fault_multiplier_scale", "1.5");
  CHECK(c.max_iter == 12);
  CHECK(c.fault_multiplier_scale == 1.5);
  CHECK(kind_of([&] { c.set("colour", "red"); }) == ErrorKind::usage);
  CHECK(kind_of([&] { c.set("n", "12x"); }) == ErrorKind::usage);
  for (auto [k, v] : std::vector<std::pair<std::string, std::string>>{
           {"n", "8"}, {"n", "100"}, {"A", "-1"}, {"m", "4"}, {"max_iter", "0"}, {"rho", "-3"}, {"rho", "x"}}) {
    cli::RunConfig bad;
    bad.set(k, v);
    CAPTURE(k);
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::usage);
  }
}

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"selftest", "--n", "8"}).code == 2);
  CHECK(call({"selftest", "--n", "abc"}).code == 2);
  CHECK(call({"solve", "--n", "64"}).code == 2);
  CHECK(call({"solve", "--structure", "nonsense:1"}).code == 2);
  CHECK(call({"verify", "--h", "gallery:nope"}).code == 2);
  const auto dir = testutil::scratch_dir("cli_cfg");
  std::ofstream(dir / "bad.cfg") << "n = 64\noops\n";
  const auto r = call({"selftest", "--config", (dir / "bad.cfg").string()});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "bad.cfg:2"));
  CHECK(call({"selftest", "--config", (dir / "missing.cfg").string()}).code == 3);
}

TEST_CASE("selftest passes and the fault hook is caught") {
  const auto dir = testutil::scratch_dir("cli_selftest");
  const auto ok = call({"selftest", "--out", dir.string()});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "selftest: PASS"));
  CHECK(std::filesystem::exists(dir / "selftest.csv"));
  const auto bad = call({"selftest", "--n", "256", "--fault-multiplier-scale", "1.1"});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "FAILED:"));
}

TEST_CASE("gallery list and dump") {
  const auto l = call({"gallery", "list"});
  CHECK(l.code == 0);
  for (const char* name : {"cuberoot", "piecewise", "pseudo_hopf", "loglog", "halfdisk", "harmonic_probe"})
    CHECK(contains(l.out, name));
  const auto dir = testutil::scratch_dir("cli_dump");
  CHECK(call({"gallery", "dump", "piecewise", "--n", "128", "--A", "2", "--out", dir.string()}).code == 0);
  const auto h = cf64::read(dir / "piecewise_h.cf64");
  CHECK(h.grid().n == 128);
  CHECK(std::filesystem::exists(dir / "piecewise_checks.csv"));
  CHECK(call({"gallery", "dump", "nope", "--out", dir.string()}).code == 2);
}

TEST_CASE("verify: refusal, bad files") {
  const auto dir = testutil::scratch_dir("cli_verify");
  const auto r = call({"verify", "--h", "gallery:loglog", "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "REFUSED"));
  CHECK(std::filesystem::exists(dir / "verify.csv"));

  std::ofstream(dir / "short.cf64", std::ios::binary) << "CF64";
  const auto s = call({"verify", "--h", (dir / "short.cf64").string(), "--structure", "rational:6,-2", "--out",
                       dir.string()});
  CHECK(s.code == 3);
  CHECK(contains(s.err, "offset 4"));
  CHECK(call({"verify", "--h", (dir / "none.cf64").string(), "--structure", "rational:6,-2"}).code == 3);
}

TEST_CASE("solve is deterministic and report merges runs") {
  const auto base = testutil::scratch_dir("cli_solve");
  std::vector<std::string> args = {"solve", "--structure", "hopf:phi=const:-1", "--n", "64", "--m", "8"};
  for (const char* run : {"a", "b"}) {
    auto a = args;
    a.push_back("--out");
    a.push_back((base / run).string());
    const auto r = call(a);
    CAPTURE(r.err);
    CHECK(r.code == 0);
  }
  for (const char* f : {"solve.csv", "report.csv", "run.cfg"})
    CHECK(read_file(base / "a" / f) == read_file(base / "b" / f));
  CHECK(std::filesystem::exists(base / "a" / "member_000_f.cf64"));
  CHECK(std::filesystem::exists(base / "a" / "member_007_omega.cf64"));
  CHECK(contains(read_file(base / "a" / "solve.csv"), "lambda_re,lambda_im,iterations,residual,max_rate"));

  const auto one = call({"report", (base / "a").string()});
  CHECK(one.code == 0);
  CHECK(contains(one.out, "check,measured,relation,bound,margin,pass"));
  const auto two = call({"report", (base / "a").string(), (base / "b").string(), "--out", (base / "m.csv").string()});
  CHECK(two.code == 0);
  CHECK(contains(two.out, "# 2 run(s)"));
  CHECK(contains(read_file(base / "m.csv"), "measured_1"));

  std::filesystem::create_directories(base / "empty");
  CHECK(call({"report", (base / "empty").string()}).code == 3);
  CHECK(call({"report", (base / "nowhere").string()}).code == 3);

  // rho below lambda0 is rejected
  CHECK(call({"solve", "--structure", "hopf:phi=const:-1", "--n", "64", "--rho", "1", "--out", (base / "c").string()})
            .code == 2);
}

}  // TEST_SUITE
