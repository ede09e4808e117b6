#pragma once

#include <cstdint>

namespace rsc {

/// splitmix64 stream. Used instead of <random> distributions so every output
/// is reproducible bit-for-bit regardless of the standard library.
struct Rng {
  uint64_t state = 0x9e3779b97f4a7c15ull;

  explicit Rng(uint64_t seed = 0) : state(seed) {}

  uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Integer in [0, n).
  uint64_t below(uint64_t n) { return next_u64() % n; }

  /// Independent sub-stream for a named purpose.
  Rng split(uint64_t tag) const {
    Rng r(state ^ (tag * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    r.next_u64();
    return r;
  }
};

}  // namespace rsc
