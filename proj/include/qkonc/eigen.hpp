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

#include <vector>

#include "qkonc/matrix.hpp"

namespace qkonc {

struct EigenDecomposition {
    std::vector<double> values; // descending
    Matrix vectors;             // column k pairs with values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// tolerance * max(1, ||A||_F). Input asymmetry above 1e-9 is rejected.
/// Deterministic: fixed (p, q) sweep order and a stable sort of the result.
EigenDecomposition jacobi_eigen(const Matrix &symmetric,
                                double tolerance = 1e-12, int max_sweeps = 100);

} // namespace qkonc
