// Copyright 2026 The greedymrf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREEDYMRF_RANDOM_HPP
#define GREEDYMRF_RANDOM_HPP

#include <cstdint>
#include <random>

namespace gmrf {

/// Project-wide generator. Every stochastic routine takes an explicit seed.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits. Avoids
/// std::uniform_real_distribution so streams match across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in the open interval (0, 1).
inline double uniform_open01(Rng& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u == 0.0);
  return u;
}

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace gmrf

#endif  // GREEDYMRF_RANDOM_HPP
