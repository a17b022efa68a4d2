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

#include <cstddef>
#include <span>

namespace qkonc {

/// Two-pass moments of a sample.
struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;        // Bessel-corrected
    double central_m4 = 0.0;      // (1/n) sum (v - mean)^4
    double se_mean = 0.0;         // sqrt(variance / n)
    double se_variance = 0.0;     // normal approximation, see summarize()
};

/// Empirical Chebyshev tail Pr[|v - mean| >= delta] next to the bound
/// variance / delta^2.
struct TailReport {
    double delta = 0.0;
    double empirical = 0.0;
    double empirical_se = 0.0;
    double chebyshev_bound = 0.0;
};

/// Requires count >= 2. The variance standard error uses
/// Var[s^2] ~= (m4 - s^4 (n - 3) / (n - 1)) / n.
SampleSummary summarize(std::span<const double> values);

/// Standard error of an empirical proportion p over n draws.
double proportion_se(double p, std::size_t n);

} // namespace qkonc
