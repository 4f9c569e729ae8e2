// Copyright 2026 The lexnorm Authors
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

#ifndef LEXNORM_RANDOM_H_
#define LEXNORM_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace lexnorm {

// The engine is fully specified by the standard; the distributions below are
// implemented here rather than taken from <random> so that sampled values are
// identical across standard library implementations.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed for the stream of item `index` under a global seed. Streams derived
// this way are independent of how items are scheduled over threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(derive_seed(seed, index));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) {
  return p > 0.0 && uniform01(rng) < p;
}

// Uniform integer in [0, n); n must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

// Uniform integer in [lo, hi].
inline std::int64_t uniform_between(Rng& rng, std::int64_t lo,
                                    std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace lexnorm

#endif  // LEXNORM_RANDOM_H_
