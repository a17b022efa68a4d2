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

#include "qkonc/error.hpp"

namespace qkonc {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_argument:
        return "invalid_argument";
    case Errc::dimension_mismatch:
        return "dimension_mismatch";
    case Errc::qubit_out_of_range:
        return "qubit_out_of_range";
    case Errc::non_finite:
        return "non_finite";
    case Errc::norm_drift:
        return "norm_drift";
    case Errc::unbound_slot:
        return "unbound_slot";
    case Errc::unsupported_rule:
        return "unsupported_rule";
    case Errc::insufficient_samples:
        return "insufficient_samples";
    case Errc::nonpositive_value:
        return "nonpositive_value";
    case Errc::asymmetric_input:
        return "asymmetric_input";
    case Errc::format_error:
        return "format_error";
    case Errc::count_mismatch:
        return "count_mismatch";
    case Errc::degenerate_data:
        return "degenerate_data";
    case Errc::distribution_mismatch:
        return "distribution_mismatch";
    case Errc::io_error:
        return "io_error";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

} // namespace qkonc
