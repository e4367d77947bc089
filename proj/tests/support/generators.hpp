#pragma once

// Seeded generators for the property tests. Every test owns its engine, so
// failures reproduce from the printed seed alone.

#include <cmath>
#include <cstdint>
#include <random>

namespace bievo::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  /// z in the open interval (0, 2 pi).
  double phase() {
    double z = 0.0;
    while (z == 0.0) z = uniform(0.0, 6.283185307179586);
    return z;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) {
  const double scale = std::abs(want) > 1.0 ? std::abs(want) : 1.0;
  return std::abs(got - want) / scale;
}

}  // namespace bievo::testing
