#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "sentinet/sha256.hpp"

namespace sentinet {

// Deterministic RNG wrapper. mt19937_64 is fully specified by the standard
// and all transforms below are hand-rolled, so a given seed yields the same
// stream on every platform (std::*_distribution is implementation-defined
// and deliberately avoided).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Rejection-free modulo bias is negligible for
  // the small n used here, but do it properly anyway.
  uint64_t uniform_below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Exponential with the given mean (mean = 1/rate).
  double exponential_mean(double mean) {
    double u = uniform01();
    return -mean * std::log1p(-u);
  }

  Hash32 random_hash() {
    Hash32 h;
    for (size_t i = 0; i < 4; ++i) {
      uint64_t v = engine_();
      for (size_t j = 0; j < 8; ++j)
        h[i * 8 + j] = static_cast<uint8_t>(v >> (8 * j));
    }
    return h;
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent child seed from a master seed and a stream label.
// Streams are keyed by (label, index) so adding nodes does not perturb the
// streams of existing ones.
uint64_t derive_seed(uint64_t master, std::string_view stream, uint64_t index = 0);

}  // namespace sentinet
