#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ilt/rng.hpp"

using namespace ilt;

namespace {
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}  // namespace

TEST_CASE("streams are reproducible") {
  auto a = rng::make_stream(42, rng::Domain::Paths, 7, 1, 3);
  std::vector<std::uint64_t> first;
  for (int i = 0; i < 16; ++i) first.push_back(a.next_u64());

  auto b = rng::make_stream(42, rng::Domain::Paths, 7, 1, 3);
  for (int i = 0; i < 16; ++i) CHECK(b.next_u64() == first[static_cast<std::size_t>(i)]);
}

TEST_CASE("distinct stream coordinates give distinct streams") {
  auto base = rng::make_stream(42, rng::Domain::Paths, 0, 0, 0);
  auto rep = rng::make_stream(42, rng::Domain::Paths, 1, 0, 0);
  auto proc = rng::make_stream(42, rng::Domain::Paths, 0, 1, 0);
  auto coord = rng::make_stream(42, rng::Domain::Paths, 0, 0, 1);
  auto domain = rng::make_stream(42, rng::Domain::MatrixFuzz, 0, 0, 0);
  auto seed = rng::make_stream(43, rng::Domain::Paths, 0, 0, 0);

  const std::uint64_t v = base.next_u64();
  CHECK(rep.next_u64() != v);
  CHECK(proc.next_u64() != v);
  CHECK(coord.next_u64() != v);
  CHECK(domain.next_u64() != v);
  CHECK(seed.next_u64() != v);
}

TEST_CASE("golden stream lock") {
  // Frozen once from this implementation; a change here silently changes
  // every seeded result in the project.
  auto s = rng::make_stream(42, rng::Domain::Paths, 0, 0, 0);
  CHECK(s.next_u64() == 0x9ceaf05377f5493bULL);
  CHECK(s.next_u64() == 0x12bf50ad5742b3d7ULL);
  CHECK(s.next_u64() == 0xfcdb212753ba6cfdULL);
  CHECK(s.next_u64() == 0x838f5a6e744e06fbULL);
}

TEST_CASE("uniform moments") {
  auto s = rng::make_stream(1234, rng::Domain::Synthetic, 0, 0, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_double();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(var - 1.0 / 12.0) < 4.0 * 0.0745 / std::sqrt(n));
}

TEST_CASE("normal quantile inverts the normal cdf") {
  CHECK(rng::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rng::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(rng::normal_quantile(normal_cdf(1.0)) == doctest::Approx(1.0).epsilon(1e-12));

  for (double u : {1e-12, 1e-6, 0.01, 0.2, 0.7, 0.99, 1.0 - 1e-9}) {
    const double x = rng::normal_quantile(u);
    CHECK(normal_cdf(x) == doctest::Approx(u).epsilon(1e-12));
  }
  // Symmetry where 1-u carries no representation error of its own.
  for (double u : {0.015625, 0.25, 0.40625}) {
    CHECK(rng::normal_quantile(1.0 - u) ==
          doctest::Approx(-rng::normal_quantile(u)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(rng::normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(rng::normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("gaussian draws have the right law") {
  auto s = rng::make_stream(99, rng::Domain::Synthetic, 0, 0, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  int beyond196 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.next_gaussian();
    sum += z;
    sum_sq += z * z;
    if (std::abs(z) > 1.959963984540054) ++beyond196;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
  const double p = static_cast<double>(beyond196) / n;
  CHECK(std::abs(p - 0.05) < 4.0 * std::sqrt(0.05 * 0.95 / n));
}

TEST_CASE("golden gaussians") {
  auto s = rng::make_stream(42, rng::Domain::Paths, 0, 0, 0);
  CHECK(s.next_gaussian() == doctest::Approx(0.28704190043009492).epsilon(1e-15));
  CHECK(s.next_gaussian() == doctest::Approx(-1.4521371470450302).epsilon(1e-15));
  CHECK(s.next_gaussian() == doctest::Approx(2.2482116342226326).epsilon(1e-15));
}
