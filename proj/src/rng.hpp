#pragma once

#include <cstdint>

namespace hc {

// Deterministic 64-bit generator (splitmix64). Used everywhere instead of
// <random> engines so that seeded runs produce identical streams on every
// platform and standard library.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound); bound must be positive.
  uint64_t below(uint64_t bound) {
    // Rejection sampling to avoid modulo bias.
    uint64_t limit = bound * (UINT64_MAX / bound);
    uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  bool coin() { return next() & 1; }
};

// Seed derivation for split-seed descent: children get independent streams
// that depend only on (parent seed, salt), never on evaluation order.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed ^ (salt + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  SplitMix64 s(z);
  return s.next();
}

}  // namespace hc
