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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkonc/matrix.hpp"

namespace qkonc {

/// Features are N x d. `provenance` is the preprocessing manifest: one JSON
/// object per step, in order, including any seed used.
struct Dataset {
    Matrix features;
    std::optional<std::vector<int>> labels;
    nlohmann::json provenance = nlohmann::json::array();

    [[nodiscard]] std::size_t size() const noexcept { return features.rows(); }
    [[nodiscard]] std::size_t dims() const noexcept { return features.cols(); }
};

/// IDX pair (images magic 2051, labels magic 2049, big-endian header).
/// Pixels are scaled to [0, 1].
Dataset load_idx(const std::string &images_path, const std::string &labels_path);
Dataset parse_idx(std::span<const std::uint8_t> images,
                  std::span<const std::uint8_t> labels);

/// CSV with a header row. A column named "label" becomes the labels; every
/// other column is a feature.
Dataset load_csv(const std::string &path);
Dataset parse_csv(const std::string &text);
std::string to_csv(const Dataset &dataset);

/// Balanced draw: ceil(n/2) points of class_a then floor(n/2) of class_b.
Dataset filter_binary(const Dataset &dataset, int class_a, int class_b,
                      std::size_t n_points, std::uint64_t seed);

struct PcaModel {
    std::vector<double> mean;        // length d
    Matrix components;               // d x k, unit columns
    std::vector<double> eigenvalues; // covariance spectrum, descending

    [[nodiscard]] Matrix project(const Matrix &features) const;
    [[nodiscard]] Matrix reconstruct(const Matrix &projected) const;
};

/// Covariance eigendecomposition with the Jacobi solver. When N < d the
/// N x N Gram form is diagonalized instead and mapped back, which yields the
/// same nonzero spectrum. Each component is signed so that its
/// largest-magnitude entry is positive.
PcaModel pca_fit(const Dataset &dataset, std::size_t k);
Dataset pca_reduce(const Dataset &dataset, std::size_t k);

/// Per-dimension affine map of [min, max] onto [-pi, pi]; constant
/// dimensions map to 0.
Dataset normalize_range(const Dataset &dataset);

/// Row i is drawn from stream (seed, i), uniform on [-pi, pi]^d.
Dataset synthetic_uniform(std::size_t n_points, std::size_t d,
                          std::uint64_t seed);

} // namespace qkonc
