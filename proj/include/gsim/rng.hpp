#pragma once

#include <cstdint>

namespace gsim {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so sampled records do not depend on evaluation
// order or thread count. Stream-split convention used by the sampler:
//   stream  = sample index
//   counter = position of the qubit in the measurement order
struct CounterRng {
  uint64_t seed = 0;

  static uint64_t mix(uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  uint64_t raw(uint64_t stream, uint64_t counter) const {
    uint64_t h = mix(seed ^ 0x243f6a8885a308d3ull);
    h = mix(h ^ stream);
    h = mix(h ^ counter);
    return h;
  }

  // Uniform in [0, 1).
  double uniform(uint64_t stream, uint64_t counter) const {
    return (raw(stream, counter) >> 11) * 0x1.0p-53;
  }
};

// Small stateful helper for test data (not used by the sampler).
struct SplitMix {
  uint64_t s;
  explicit SplitMix(uint64_t seed) : s(seed) {}
  uint64_t next() { return CounterRng::mix(s++); }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int range(int n) { return (int)(next() % (uint64_t)n); }
};

}  // namespace gsim
