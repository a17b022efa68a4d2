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

// qkonc: kernel concentration experiments from the command line.
//
//   qkonc gram     --ansatz havlicek --qubits 2,4 --seed 1 --out runs/g
//   qkonc sweep    --ansatz perm --depth-rule n --qubits 2:16:2 --seed 7
//   qkonc verify   --seed 3
//   qkonc bp-scan  --ansatz hwe --depth-rule n --qubits 2:8 --seed 5
//   qkonc spectrum --qubits 2,4,6 --seed 1
//
// Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkonc/error.hpp"
#include "qkonc/experiments.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::optional<std::string> ansatz;
    std::optional<std::string> qubits;
    std::optional<int> depth;
    std::optional<std::string> depth_rule;
    std::optional<std::string> entanglement;
    std::optional<std::string> data;
    std::optional<std::string> classes;
    std::optional<std::size_t> points;
    std::optional<std::uint64_t> shots;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> anchors;
    std::optional<std::uint64_t> seed;
    std::vector<double> deltas;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
    std::optional<std::string> pca_fit;
    bool no_normalize = false;
    bool inject_asymmetric = false;
};

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override it");
    cmd->add_option("--ansatz", f.ansatz,
                    "havlicek | perm | hwe | product-rx | identity");
    cmd->add_option("--qubits", f.qubits, "e.g. 2,4,6 or 2:16:2");
    cmd->add_option("--depth", f.depth, "layers when --depth-rule is constant");
    cmd->add_option("--depth-rule", f.depth_rule, "constant | n");
    cmd->add_option("--entanglement", f.entanglement, "full | linear");
    cmd->add_option("--data", f.data, "synthetic | csv:PATH | idx:IMAGES,LABELS");
    cmd->add_option("--classes", f.classes, "two labels, e.g. 0,1");
    cmd->add_option("--points", f.points, "data points per Gram matrix");
    cmd->add_option("--shots", f.shots, "0 = exact kernel values");
    cmd->add_option("--samples", f.samples, "Monte-Carlo draws");
    cmd->add_option("--anchors", f.anchors, "anchors for conditional variances");
    cmd->add_option("--seed", f.seed, "master seed (required)");
    cmd->add_option("--delta", f.deltas, "Chebyshev tail thresholds")->delimiter(',');
    cmd->add_option("--threads", f.threads, "worker threads; 0 = QKONC_THREADS or all cores");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--pca-fit", f.pca_fit, "subset | corpus");
    cmd->add_flag("--no-normalize", f.no_normalize,
                  "keep raw PCA projections instead of mapping onto [-pi, pi]");
}

qkonc::SweepConfig resolve(const Flags &f) {
    nlohmann::json j = nlohmann::json::object();
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in)
            throw qkonc::Error(qkonc::Errc::io_error,
                               "cannot read config " + f.config_path);
        try {
            in >> j;
        } catch (const nlohmann::json::exception &e) {
            throw qkonc::Error(qkonc::Errc::format_error,
                               "config " + f.config_path + ": " + e.what());
        }
    }
    if (!f.seed && !j.contains("seed"))
        throw qkonc::Error(qkonc::Errc::invalid_argument,
                           "--seed is required (no clock seeding)");

    if (f.ansatz)
        j["ansatz"] = *f.ansatz;
    if (f.qubits)
        j["qubits"] = *f.qubits;
    if (f.depth)
        j["depth"] = *f.depth;
    if (f.depth_rule)
        j["depth_rule"] = *f.depth_rule;
    if (f.entanglement)
        j["entanglement"] = *f.entanglement;
    if (f.data)
        j["data"] = *f.data;
    if (f.classes) {
        std::vector<int> cls;
        std::stringstream ss(*f.classes);
        std::string item;
        while (std::getline(ss, item, ','))
            cls.push_back(std::stoi(item));
        j["classes"] = cls;
    }
    if (f.points)
        j["points"] = *f.points;
    if (f.shots)
        j["shots"] = *f.shots;
    if (f.samples)
        j["samples"] = *f.samples;
    if (f.anchors)
        j["anchors"] = *f.anchors;
    if (f.seed)
        j["seed"] = *f.seed;
    if (!f.deltas.empty())
        j["deltas"] = f.deltas;
    if (f.threads)
        j["threads"] = *f.threads;
    if (f.out)
        j["out"] = *f.out;
    if (f.pca_fit)
        j["pca_fit"] = *f.pca_fit;
    if (f.no_normalize)
        j["normalize"] = false;
    if (f.inject_asymmetric)
        j["inject_asymmetric"] = true;
    return qkonc::sweep_config_from_json(j, {});
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exponential concentration diagnostics for quantum kernels"};
    app.require_subcommand(1);
    Flags flags;

    auto *gram = app.add_subcommand("gram", "Gram matrices as CSV, JSON and SVG heatmap");
    auto *sweep = app.add_subcommand("sweep", "Kernel variance across qubit counts plus decay fit");
    auto *verify = app.add_subcommand("verify", "Variance-bound and cost-identity checks");
    auto *bp = app.add_subcommand("bp-scan", "Gradient and cost variance across qubit counts");
    auto *spectrum = app.add_subcommand("spectrum", "Gram eigenvalues and flatness");
    for (auto *cmd : {gram, sweep, verify, bp, spectrum})
        add_common(cmd, flags);
    verify->add_flag("--inject-asymmetric", flags.inject_asymmetric,
                     "add a fixture that must fail the upper bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    qkonc::SweepConfig config;
    try {
        config = resolve(flags);
        if (!verify->parsed() || config.family)
            qkonc::validate(config);
    } catch (const std::exception &e) {
        std::cerr << "qkonc: " << e.what() << '\n';
        return 2;
    }

    try {
        qkonc::CommandOutcome outcome;
        if (gram->parsed())
            outcome = qkonc::run_gram(config);
        else if (sweep->parsed())
            outcome = qkonc::run_sweep(config);
        else if (verify->parsed())
            outcome = qkonc::run_verify(config);
        else if (bp->parsed())
            outcome = qkonc::run_bp_scan(config);
        else
            outcome = qkonc::run_spectrum(config);

        for (const auto &file : outcome.files)
            std::cout << "wrote " << file << '\n';
        for (const auto &failure : outcome.failures)
            std::cerr << "FAILED " << failure << '\n';
        return outcome.exit_code;
    } catch (const qkonc::Error &e) {
        std::cerr << "qkonc: " << qkonc::to_string(e.code()) << ": " << e.what() << '\n';
        return e.code() == qkonc::Errc::invalid_argument ? 2 : 1;
    } catch (const std::exception &e) {
        std::cerr << "qkonc: " << e.what() << '\n';
        return 1;
    }
}
