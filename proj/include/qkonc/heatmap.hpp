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

#include <string>

#include "qkonc/matrix.hpp"

namespace qkonc {

/// "#rrggbb" on an 8-stop viridis ramp; values are clamped to [0, 1].
std::string heat_color(double value);

/// Self-contained SVG of the matrix with a fixed [0, 1] color scale. Output
/// depends only on the inputs.
std::string render_heatmap_svg(const Matrix &values, const std::string &title);

} // namespace qkonc
