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
 * Experiment drivers behind the `qkonc` subcommands. Each driver takes a
 * resolved SweepConfig, writes its report files under `out_dir`, and returns
 * what it wrote plus an exit code. Every file embeds the result-affecting
 * part of the config (everything except `out_dir` and `threads`), so two runs
 * with the same config produce byte-identical files.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkonc/circuit.hpp"
#include "qkonc/data.hpp"

namespace qkonc {

enum class DepthRule { constant, equal_to_n };

struct DataSourceSpec {
    enum class Kind { synthetic, csv, idx };
    Kind kind = Kind::synthetic;
    std::string path;        // csv file, or idx images
    std::string labels_path; // idx labels
};

/// Parses "synthetic", "csv:PATH" or "idx:IMAGES,LABELS".
DataSourceSpec parse_data_source(const std::string &text);

struct SweepConfig {
    std::optional<AnsatzFamily> family; // unset: HavlicekZZ, or full suite in verify
    Entanglement entanglement = Entanglement::full;
    DepthRule depth_rule = DepthRule::constant;
    std::optional<int> depth; // unset: 2 for HavlicekZZ, 1 otherwise
    std::vector<int> qubits;
    DataSourceSpec data;
    int class_a = 0;
    int class_b = 1;
    std::size_t points = 100;
    std::uint64_t shots = 0;
    std::size_t samples = 200; // Monte-Carlo draws (theta samples, draws per anchor)
    std::size_t anchors = 20;
    std::uint64_t seed = 0;
    std::vector<double> deltas{0.1};
    unsigned threads = 0;
    std::string out_dir = ".";
    bool pca_on_corpus = false; // fit PCA on the whole corpus, not the subset
    bool normalize = true;
    bool inject_asymmetric = false; // verify: add a fixture that breaks the upper bound
};

/// Throws invalid_argument unless the qubit list is nonempty and strictly
/// increasing and the counts are usable.
void validate(const SweepConfig &config);

/// "2,4,6" or "2:10:2" (inclusive range with step) or a mix of both.
std::vector<int> parse_qubit_list(const std::string &text);

nlohmann::json to_json(const SweepConfig &config);
/// Fields present in `j` override `base`.
SweepConfig sweep_config_from_json(const nlohmann::json &j, SweepConfig base);

int depth_for(const SweepConfig &config, int n);
AnsatzSpec ansatz_for(const SweepConfig &config, int n);

/// Data pipeline for one qubit count: synthetic uniform points, or
/// load -> filter_binary -> PCA to d -> normalize for real data.
Dataset dataset_for(const SweepConfig &config, int n, std::size_t d);

struct CommandOutcome {
    int exit_code = 0;
    std::vector<std::string> files;
    std::vector<std::string> failures;
    nlohmann::json summary;
};

struct SweepHooks {
    // Replaces the measured total variance at n when it returns a value.
    std::function<std::optional<double>(int)> variance_override;
};

CommandOutcome run_gram(const SweepConfig &config);
CommandOutcome run_sweep(const SweepConfig &config, const SweepHooks &hooks = {});
CommandOutcome run_verify(const SweepConfig &config);
CommandOutcome run_bp_scan(const SweepConfig &config);
CommandOutcome run_spectrum(const SweepConfig &config);

} // namespace qkonc
