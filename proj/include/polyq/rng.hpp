#pragma once

#include <cstdint>

namespace polyq {

/**
 * Deterministic splittable randomness: every (seed, index) pair names an
 * independent stream, so parallel and serial sampling agree byte for byte.
 */
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix(seed ^ mix(index + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next() {
    // splitmix64 step
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [1, m].
  std::uint64_t uniform_int(std::uint64_t m) { return 1 + next() % m; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace polyq
