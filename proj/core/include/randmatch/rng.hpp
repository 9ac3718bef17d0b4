#pragma once

#include <cstdint>
#include <random>

namespace randmatch {

// One generator type everywhere so a (seed, algorithm) pair replays exactly.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Trial k of a batch runs on its own stream; batches emit rows in trial
// order regardless of how the work is scheduled.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return base_seed + trial;
}

// Uniform draw from [0, n) by rejection. Not std::uniform_int_distribution:
// that one is implementation-defined, and pinned streams must not depend on
// which standard library compiled the binary.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Uniform double in [0, 1), 53 bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; used where an exact zero would be degenerate.
inline double uniform_unit_positive(Rng& rng) {
  return 1.0 - uniform_unit(rng);
}

}  // namespace randmatch
