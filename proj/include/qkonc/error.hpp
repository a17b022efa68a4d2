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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qkonc {

/// Failure categories surfaced by every module. Tests match on these rather
/// than on message text.
enum class Errc {
    invalid_argument,
    dimension_mismatch,
    qubit_out_of_range,
    non_finite,
    norm_drift,
    unbound_slot,
    unsupported_rule,
    insufficient_samples,
    nonpositive_value,
    asymmetric_input,
    format_error,
    count_mismatch,
    degenerate_data,
    distribution_mismatch,
    io_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &message);

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

// Throws Error(code, message) when `condition` is false.
inline void require(bool condition, Errc code, const std::string &message) {
    if (!condition) {
        throw Error(code, message);
    }
}

} // namespace qkonc
