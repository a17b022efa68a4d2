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

/**
 * @file
 * Fidelity kernel k(x, x') = |<0|W(x)^dag W(x')|0>|^2 and Gram matrices.
 *
 * Two exact routes are provided. kernel_entry() prepares both encoded states
 * and takes their overlap; kernel_entry_compiled() runs the inversion circuit
 * W(x')^dag W(x) on |0...0> and reads the all-zeros probability, which is what
 * a device would estimate. The shot estimator samples that probability.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "qkonc/circuit.hpp"
#include "qkonc/matrix.hpp"
#include "qkonc/rng.hpp"

namespace qkonc {

struct GramMeta {
    std::optional<AnsatzSpec> ansatz;
    int n_qubits = 0;
    std::uint64_t shots = 0; // 0 = exact
    std::uint64_t seed = 0;
};

struct GramMatrix {
    Matrix entries;
    GramMeta meta;
};

double kernel_entry(const Circuit &circuit, std::span<const double> x,
                    std::span<const double> x_prime);

double kernel_entry_compiled(const Circuit &circuit, std::span<const double> x,
                             std::span<const double> x_prime);

/// Fraction of `shots` Bernoulli(p) draws that succeed.
double sample_all_zeros(double probability, std::uint64_t shots, Rng &rng);

double kernel_entry_shots(const Circuit &circuit, std::span<const double> x,
                          std::span<const double> x_prime, std::uint64_t shots,
                          Rng &rng);

struct GramOptions {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// One state preparation per row of `dataset`, then pairwise overlaps over the
/// upper triangle. In shot mode pair (i, j) draws from stream (seed, i, j) and
/// (j, i) reuses that estimate.
GramMatrix gram(const Circuit &circuit, const Matrix &dataset,
                const GramOptions &options = {});

/// Encoded-state preparations performed by gram() since the last reset.
std::uint64_t state_preparation_count() noexcept;
void reset_state_preparation_count() noexcept;

std::string gram_to_csv(const GramMatrix &gram);
nlohmann::json to_json(const GramMatrix &gram);
GramMatrix gram_from_json(const nlohmann::json &j);

} // namespace qkonc
