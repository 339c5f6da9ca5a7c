// Copyright 2026 The moralsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MORALSIM_RNG_H_
#define MORALSIM_RNG_H_

#include <cstdint>
#include <random>

namespace moralsim {

// All randomness in the simulator flows through std::mt19937_64 seeded via
// SplitMix64-derived values. mt19937_64 output is pinned by the C++ standard,
// so identical seeds give bit-identical runs on every platform. The std
// distribution adapters are NOT used anywhere (their output is
// implementation-defined); the helpers below replace them.
using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea & Flood; public-domain reference
// constants). Used both as a seed mixer and as the run-seed derivation.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// The i-th element of the SplitMix64 stream seeded at `base`. Run i of a
// matchup is seeded with DeriveSeed(base_seed, i); an episode derives its
// internal substreams the same way from its own seed.
inline std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index) {
  return SplitMix64(base + index * 0x9E3779B97F4A7C15ULL);
}

// Canonical double in [0, 1) from the top 53 bits of one draw.
inline double NextUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// True with probability p. p=0 never fires, p=1 always fires.
inline bool NextChance(Rng& rng, double p) { return NextUnit(rng) < p; }

// Uniform draw from {0, 1}.
inline int NextBit(Rng& rng) { return static_cast<int>(rng() >> 63); }

// Uniform draw from {0, 1, 2, 3}.
inline int NextTwoBits(Rng& rng) { return static_cast<int>(rng() >> 62); }

}  // namespace moralsim

#endif  // MORALSIM_RNG_H_
