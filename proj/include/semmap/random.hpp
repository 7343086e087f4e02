#pragma once

#include <cstdint>
#include <random>

namespace semmap {

// splitmix64-style mixing, used to derive independent sub-stream seeds
// (per frame, per detection) from the single scenario seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// Deterministic sampler. Distributions are implemented by hand on top of
// mt19937_64 because the std distribution objects are not required to
// produce the same sequences across standard library implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive bounds
  double normal(double mean, double stddev);
  int poisson(double mean);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace semmap
