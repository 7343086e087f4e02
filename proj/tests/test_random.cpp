#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "semmap/random.hpp"

using namespace semmap;

TEST_SUITE("random") {

TEST_CASE("same seed reproduces the stream") {
  RandomSource a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  for (int i = 0; i < 100; ++i) CHECK(a.normal(0, 1) == b.normal(0, 1));
  for (int i = 0; i < 20; ++i) CHECK(a.poisson(3.0) == b.poisson(3.0));
}

TEST_CASE("different seeds diverge") {
  RandomSource a(1), b(2);
  int identical = 0;
  for (int i = 0; i < 64; ++i)
    if (a.uniform() == b.uniform()) ++identical;
  CHECK(identical < 4);
}

TEST_CASE("mix_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 8; ++s)
    for (std::uint64_t a = 0; a < 8; ++a) {
      seen.insert(mix_seed(s, a));
      seen.insert(mix_seed(s, a, 3));
    }
  CHECK(seen.size() == 128);
  CHECK(mix_seed(5, 1, 2) != mix_seed(5, 2, 1));
}

TEST_CASE("uniform moments") {
  RandomSource rng(9001);
  const int n = 100000;
  double sum = 0.0;
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("uniform range endpoints") {
  RandomSource rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-2.0, 3.0);
    CHECK(u >= -2.0);
    CHECK(u < 3.0);
  }
}

TEST_CASE("normal moments") {
  RandomSource rng(123);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(1.0, 2.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sq / n - mean * mean);
  CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
  CHECK(stddev == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("half normal mean") {
  // |N(0, sigma)| has mean sigma * sqrt(2/pi); the depth-noise magnitude
  // checks in the simulator tests rely on this identity.
  RandomSource rng(202);
  const double sigma = 0.5;
  const int n = 10000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::abs(rng.normal(0.0, sigma));
  CHECK(sum / n ==
        doctest::Approx(sigma * std::sqrt(2.0 / M_PI)).epsilon(0.02));
}

TEST_CASE("poisson mean") {
  RandomSource rng(31);
  const int n = 50000;
  const double lambda = 2.5;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.poisson(lambda);
  CHECK(sum / n == doctest::Approx(lambda).epsilon(0.02));
  for (int i = 0; i < 100; ++i) CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("uniform_int covers both bounds") {
  RandomSource rng(77);
  std::set<int> seen;
  for (int i = 0; i < 500; ++i) seen.insert(rng.uniform_int(0, 4));
  CHECK(seen.count(0) == 1);
  CHECK(seen.count(4) == 1);
  CHECK(*seen.begin() >= 0);
  CHECK(*seen.rbegin() <= 4);
}

}  // TEST_SUITE
