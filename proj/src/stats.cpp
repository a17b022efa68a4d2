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

#include "qkonc/stats.hpp"

#include <algorithm>
#include <cmath>

#include "qkonc/error.hpp"

namespace qkonc {

SampleSummary summarize(std::span<const double> values) {
    const std::size_t n = values.size();
    require(n >= 2, Errc::insufficient_samples,
            "need at least 2 samples, got " + std::to_string(n));
    SampleSummary s;
    s.count = n;
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(n);
    // A constant sample has exactly zero spread; rounding in the mean must
    // not invent some.
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) {
        s.mean = *lo;
        return s;
    }
    double m2 = 0.0;
    double m4 = 0.0;
    for (const double v : values) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    const auto nd = static_cast<double>(n);
    s.variance = m2 / (nd - 1.0);
    s.central_m4 = m4 / nd;
    s.se_mean = std::sqrt(s.variance / nd);
    const double var_of_var =
        (s.central_m4 - s.variance * s.variance * (nd - 3.0) / (nd - 1.0)) / nd;
    s.se_variance = std::sqrt(std::max(0.0, var_of_var));
    return s;
}

double proportion_se(double p, std::size_t n) {
    require(n >= 1, Errc::insufficient_samples, "proportion over zero draws");
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

} // namespace qkonc
