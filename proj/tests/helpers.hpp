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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qkonc/rng.hpp"
#include "qkonc/statevec.hpp"

namespace qkonc::testing {

inline constexpr double kPi = std::numbers::pi;

/// Haar-ish random state: normalized complex Gaussian amplitudes.
inline StateVector random_state(int n, Rng &rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &v : a) {
        v = {g(rng), g(rng)};
        norm += std::norm(v);
    }
    for (auto &v : a)
        v /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(a));
}

inline std::vector<double> random_vector(std::size_t d, Rng &rng,
                                         double lo = -kPi, double hi = kPi) {
    std::vector<double> v(d);
    for (auto &x : v)
        x = uniform(rng, lo, hi);
    return v;
}

} // namespace qkonc::testing
