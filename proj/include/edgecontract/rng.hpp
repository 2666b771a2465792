#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>

namespace edgecontract {

// Seeded generator with platform-independent transforms. The standard
// distributions are implementation-defined, which would break byte-identical
// output across toolchains, so only the raw engine stream is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// True with probability p. p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform index in [0, n), n > 0.
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform01() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgecontract
