#include "util.hpp"

#include <random>
#include <vector>

#include "innerlip/kernels.hpp"

using namespace innerlip;

namespace {

struct Data {
  std::vector<cplx> a, b;
};

Data random_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 3.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.a.emplace_back(N(rng), N(rng));
    d.b.emplace_back(N(rng), N(rng));
  }
  return d;
}

void compare(const kernels::KernelTable& ref, const kernels::KernelTable& alt, std::size_t n) {
  const Data d = random_data(n, 17 + n);
  std::vector<cplx> o1(n), o2(n);
  std::vector<double> r1(n), r2(n);
  auto rel = [](cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(x)); };

  ref.cmul(d.a.data(), d.b.data(), o1.data(), n);
  alt.cmul(d.a.data(), d.b.data(), o2.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(rel(o1[i], o2[i]) < 1e-14);
  ref.cmul_conj(d.a.data(), d.b.data(), o1.data(), n);
  alt.cmul_conj(d.a.data(), d.b.data(), o2.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(rel(o1[i], o2[i]) < 1e-14);
  ref.sub(d.a.data(), d.b.data(), o1.data(), n);
  alt.sub(d.a.data(), d.b.data(), o2.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == o2[i]);
  ref.jacobian(d.a.data(), d.b.data(), r1.data(), n);
  alt.jacobian(d.a.data(), d.b.data(), r2.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r1[i] - r2[i]) <= 1e-14 * std::max(1.0, std::norm(d.a[i]) + std::norm(d.b[i])));
  ref.abs2(d.a.data(), r1.data(), n);
  alt.abs2(d.a.data(), r2.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r1[i] - r2[i]) <= 1e-14 * std::max(1.0, r1[i]));
  const double s1 = ref.sum_abs2(d.a.data(), n), s2 = alt.sum_abs2(d.a.data(), n);
  CHECK(std::abs(s1 - s2) <= 1e-13 * std::max(1.0, s1));
  CHECK(ref.max_abs(d.a.data(), n) == doctest::Approx(alt.max_abs(d.a.data(), n)).epsilon(1e-15));
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference values") {
  const auto& s = kernels::scalar_table();
  const cplx a[] = {{1, 2}, {3, -1}, {0, 0}};
  const cplx b[] = {{2, -1}, {0.5, 0.5}, {1, 1}};
  cplx o[3];
  double r[3];
  s.cmul(a, b, o, 3);
  CHECK(o[0] == cplx(4, 3));
  s.cmul_conj(a, b, o, 3);
  CHECK(o[0] == cplx(0, 5));
  s.jacobian(a, b, r, 3);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 9.5);
  CHECK(s.sum_abs2(a, 3) == 15.0);
  CHECK(s.max_abs(a, 3) == doctest::Approx(std::sqrt(10.0)));
  CHECK(s.max_abs(a, 0) == 0.0);
}

TEST_CASE("vector variants agree with the reference, including odd tails") {
  const auto& ref = kernels::scalar_table();
  std::vector<const kernels::KernelTable*> alts;
  if (auto* t = kernels::avx2_table()) alts.push_back(t);
  if (auto* t = kernels::neon_table()) alts.push_back(t);
  alts.push_back(&kernels::active());
  for (auto* alt : alts) {
    CAPTURE(alt->name);
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u, 65536u}) compare(ref, *alt, n);
  }
}

TEST_CASE("dispatch honours the environment override") {
  const char* env = std::getenv("INNERLIP_SIMD");
  if (env && std::string(env) == "scalar") CHECK(std::string(kernels::active().name) == "scalar");
  else if (kernels::avx2_table()) CHECK(std::string(kernels::active().name) == kernels::avx2_table()->name);
}

}  // TEST_SUITE
