#pragma once

#include <cstdint>
#include <random>

namespace hksym {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for item `index` of a run seeded with `seed`; streams are independent of scheduling.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Portable generator: mt19937_64 plus hand-rolled uniform/normal transforms,
/// so sequences match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hksym
