// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic randomness plumbing. Every stochastic routine takes an
// explicit Rng; per-trial streams are derived as a SplitMix64 mix of
// (master seed, stream tag, trial index, grid index), so any worker can
// rebuild any stream and results never depend on scheduling.

#pragma once

#include <cstdint>
#include <random>

namespace rankmin {

// SplitMix64 output mixer (Steele, Lea, Vigna 2014).
constexpr uint64_t splitmix64_mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed of an independent stream, a pure function of its coordinates.
constexpr uint64_t derive_seed(uint64_t master, uint64_t tag, uint64_t index = 0,
                               uint64_t sub = 0) {
  uint64_t s = splitmix64_mix(master);
  s = splitmix64_mix(s ^ (0x9e3779b97f4a7c15ull * (tag + 1)));
  s = splitmix64_mix(s ^ (0xc2b2ae3d27d4eb4full * (index + 1)));
  s = splitmix64_mix(s ^ (0x165667b19e3779f9ull * (sub + 1)));
  return s;
}

// Stream tags, one per independently sampled object kind.
enum : uint64_t {
  kStreamUnknown = 1,  // the planted low-rank matrix
  kStreamSensing = 2,  // the sensing stack
  kStreamNoise = 3,    // additive measurement noise
  kStreamMisc = 4,
};

// mt19937_64 is fully specified by the C++ standard, so identical seeds give
// identical streams everywhere. Bounded draws avoid
// std::uniform_int_distribution, whose mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, bound), bound >= 1; rejection keeps the law exact.
  uint32_t below(uint32_t bound) {
    if (bound <= 1) return 0;
    const uint64_t span = 0x100000000ull;
    const uint64_t limit = span - span % bound;
    for (;;) {
      uint64_t v = gen_() & 0xffffffffull;
      if (v < limit) return static_cast<uint32_t>(v % bound);
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rankmin
