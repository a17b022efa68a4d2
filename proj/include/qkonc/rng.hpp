// Copyright 2026 The qkonc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace qkonc {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

/// Seed for the independent stream identified by (seed, a, b). Every Monte
/// Carlo sample, data point and Gram pair draws from its own stream so that
/// results do not depend on thread scheduling.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^
                      (b * 0xd6e8feb86659fd93ULL));
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t a,
                       std::uint64_t b = 0) {
    return Rng(stream_seed(seed, a, b));
}

// 53-bit uniform in [0, 1). Spelled out instead of
// std::uniform_real_distribution so values are identical across standard
// libraries.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

inline double uniform(Rng &rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_index(Rng &rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r = rng();
    while (r >= limit) {
        r = rng();
    }
    return r % bound;
}

} // namespace qkonc
