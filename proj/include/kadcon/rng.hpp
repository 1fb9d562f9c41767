#ifndef KADCON_RNG_HPP
#define KADCON_RNG_HPP

#include <cstdint>
#include <random>

namespace kadcon {

// All randomness in the simulator flows through these helpers instead of
// <random> distributions, whose output is implementation-defined. Identical
// seeds must reproduce identical runs on any standard library.
using Rng = std::mt19937_64;

// Uniform integer in [0, n). n must be > 0.
inline uint64_t rng_below(Rng& rng, uint64_t n) {
  if (n == 0) return 0;
  uint64_t mask = ~uint64_t{0};
  uint64_t limit = n - 1;
  // smallest all-ones mask covering n-1
  mask >>= (limit == 0) ? 63 : __builtin_clzll(limit);
  for (;;) {
    uint64_t x = rng() & mask;
    if (x < n) return x;
  }
}

// Uniform integer in [lo, hi], inclusive.
inline int64_t rng_range(Rng& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(rng_below(rng, static_cast<uint64_t>(hi - lo + 1)));
}

// Uniform double in [0, 1) with 53 random bits.
inline double rng_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace kadcon

#endif
