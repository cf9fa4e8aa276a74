#include "util.hpp"

#include <cstring>
#include <fstream>
#include <random>

#include "innerlip/cf64.hpp"

using namespace innerlip;
using testutil::kind_of;
using testutil::message_of;

namespace {

ComplexField random_field(std::size_t n, std::uint64_t seed, bool masked) {
  GridSpec g{4.0, n};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1e3);
  ComplexField f(g);
  for (auto& v : f.values()) v = {N(rng), N(rng)};
  if (masked) {
    std::vector<std::uint8_t> m(g.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = (i % 7 == 3);
    f.set_mask(std::move(m));
  }
  return f;
}

bool bit_equal(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid()) || a.size() != b.size()) return false;
  if (std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(cplx)) != 0) return false;
  if (a.has_mask() != b.has_mask() || a.supported_in_2D() != b.supported_in_2D()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.excluded(i) != b.excluded(i)) return false;
  return true;
}

std::string put_u32(std::string s, std::size_t off, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) s[off + k] = static_cast<char>((v >> (8 * k)) & 0xff);
  return s;
}

std::string put_f64(std::string s, std::size_t off, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  for (int k = 0; k < 8; ++k) s[off + k] = static_cast<char>((u >> (8 * k)) & 0xff);
  return s;
}

}  // namespace

TEST_SUITE("cf64") {

TEST_CASE("round trip is bit exact") {
  for (bool masked : {false, true}) {
    auto f = random_field(64, masked ? 2 : 1, masked);
    const auto bytes = cf64::encode(f);
    CHECK(bytes.size() == cf64::header_bytes + 64 * 64 * 16 + (masked ? 64 * 64 : 0));
    CHECK(bytes.substr(0, 4) == "CF64");
    CHECK(bit_equal(cf64::decode(bytes), f));
  }
  // support flag survives
  GridSpec g{4.0, 32};
  auto s = sample(g, [](cplx z) { return std::abs(z) < 1.0 ? z : cplx(0.0); });
  s.mark_supported_in_2D();
  const auto back = cf64::decode(cf64::encode(s));
  CHECK(back.supported_in_2D());
  CHECK(bit_equal(back, s));
  // special values keep their bits
  ComplexField sp(g);
  sp[0] = {-0.0, 5e-324};
  sp[1] = {1.7976931348623157e308, -1e-300};
  CHECK(bit_equal(cf64::decode(cf64::encode(sp)), sp));
  CHECK(std::signbit(cf64::decode(cf64::encode(sp))[0].real()));
}

TEST_CASE("header layout") {
  GridSpec g{3.5, 16};
  ComplexField f(g);
  const auto b = cf64::encode(f);
  auto u32 = [&b](std::size_t off) {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + k])) << (8 * k);
    return v;
  };
  CHECK(u32(4) == cf64::version);
  CHECK(u32(8) == 16u);
  double A;
  std::memcpy(&A, b.data() + 12, 8);  // host is little-endian on all supported targets
  CHECK(A == 3.5);
  CHECK(u32(20) == 0u);
}

TEST_CASE("malformed input names the byte offset") {
  const auto f = random_field(16, 3, true);
  const std::string good = cf64::encode(f);
  struct Case {
    std::string bytes;
    std::string needle;
  };
  std::string bad_mask = good;
  bad_mask[good.size() - 1] = 2;
  const std::vector<Case> cases = {
      {good.substr(0, 4), "offset 4"},
      {"XF64" + good.substr(4), "offset 0"},
      {put_u32(good, 4, 9), "offset 4"},
      {put_u32(good, 8, 17), "offset 8"},
      {put_u32(good, 8, 8), "offset 8"},
      {put_f64(good, 12, -1.0), "offset 12"},
      {put_f64(good, 12, std::nan("")), "offset 12"},
      {put_u32(good, 20, 8), "offset 20"},
      {good.substr(0, 100), "offset 100"},
      {good + "x", "offset " + std::to_string(good.size())},
      {bad_mask, "offset " + std::to_string(good.size() - 1)},
  };
  for (const auto& c : cases) {
    CAPTURE(c.needle);
    CHECK(kind_of([&] { cf64::decode(c.bytes, "t.cf64"); }) == ErrorKind::io);
    const std::string msg = message_of([&] { cf64::decode(c.bytes, "t.cf64"); });
    CHECK(msg.find("t.cf64") != std::string::npos);
    CHECK(msg.find(c.needle) != std::string::npos);
  }
}

TEST_CASE("files: atomic write, read back, missing file") {
  const auto dir = testutil::scratch_dir("cf64");
  const auto f = random_field(32, 4, false);
  const auto path = dir / "sub" / "f.cf64";
  cf64::write(path, f);
  CHECK(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  CHECK(bit_equal(cf64::read(path), f));
  // overwrite replaces the whole file
  const auto g = random_field(16, 5, true);
  cf64::write(path, g);
  CHECK(bit_equal(cf64::read(path), g));
  CHECK(kind_of([&] { cf64::read(dir / "missing.cf64"); }) == ErrorKind::io);
  write_file_atomic(dir / "t.txt", "abc");
  CHECK(read_file(dir / "t.txt") == "abc");
}

}  // TEST_SUITE
