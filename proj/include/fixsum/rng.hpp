#pragma once

#include <cstdint>

namespace fixsum {

/// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom mixer).
/// Portable: the sequence depends only on the 64-bit state, never on the
/// platform.
struct SplitMix64 {
  uint64_t state = 0;

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

/// SplitMix64 finalizer on its own, used for stream derivation.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stream-derivation rule: trial t of a run seeded with s draws from a
/// SplitMix64 whose initial state is mix64(s + (t+1) * 0x9E3779B97F4A7C15).
/// Trials can therefore be generated in any order (or in parallel) and still
/// reproduce the serial run exactly.
inline SplitMix64 trial_stream(uint64_t seed, uint64_t trial) {
  return SplitMix64{mix64(seed + (trial + 1) * 0x9E3779B97F4A7C15ull)};
}

/// Unbiased uniform draw from {0, .., bound-1} by rejection.
inline uint64_t uniform_below(SplitMix64& rng, uint64_t bound) {
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const uint64_t x = rng.next();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace fixsum
