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

#include "qkonc/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <random>
#include <sstream>

#include "qkonc/error.hpp"
#include "qkonc/parallel.hpp"

namespace qkonc {

namespace {

std::atomic<std::uint64_t> g_state_preparations{0};

void require_data_only(const Circuit &circuit) {
    require(circuit.n_theta_slots() == 0, Errc::unbound_slot,
            "kernel circuits must not have unbound theta slots (" +
                std::to_string(circuit.n_theta_slots()) + " present)");
}

} // namespace

double kernel_entry(const Circuit &circuit, std::span<const double> x,
                    std::span<const double> x_prime) {
    require_data_only(circuit);
    return fidelity(simulate(circuit, x), simulate(circuit, x_prime));
}

double kernel_entry_compiled(const Circuit &circuit, std::span<const double> x,
                             std::span<const double> x_prime) {
    require_data_only(circuit);
    StateVector state(circuit.n_qubits());
    run(state, bind(circuit, x, {}));
    run(state, bind(circuit.adjoint(), x_prime, {}));
    return prob_all_zeros(state);
}

double sample_all_zeros(double probability, std::uint64_t shots, Rng &rng) {
    require(shots >= 1, Errc::invalid_argument, "shot count must be >= 1");
    const double p = std::clamp(probability, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p);
    return static_cast<double>(draw(rng)) / static_cast<double>(shots);
}

double kernel_entry_shots(const Circuit &circuit, std::span<const double> x,
                          std::span<const double> x_prime, std::uint64_t shots,
                          Rng &rng) {
    require(shots >= 1, Errc::invalid_argument, "shot count must be >= 1");
    return sample_all_zeros(kernel_entry_compiled(circuit, x, x_prime), shots,
                            rng);
}

GramMatrix gram(const Circuit &circuit, const Matrix &dataset,
                const GramOptions &options) {
    require_data_only(circuit);
    require(static_cast<int>(dataset.cols()) == circuit.n_data_slots(),
            Errc::dimension_mismatch,
            "dataset has " + std::to_string(dataset.cols()) +
                " features, circuit expects " +
                std::to_string(circuit.n_data_slots()));
    const std::size_t count = dataset.rows();
    const unsigned threads = resolve_threads(options.threads);

    std::vector<std::optional<StateVector>> states(count);
    parallel_for(count, threads, [&](std::size_t i) {
        states[i] = simulate(circuit, dataset.row(i));
        g_state_preparations.fetch_add(1, std::memory_order_relaxed);
    });

    GramMatrix result;
    result.entries = Matrix(count, count);
    result.meta = GramMeta{circuit.origin(), circuit.n_qubits(), options.shots,
                           options.seed};

    // Row i owns entries (i, j >= i) and mirrors them; rows never overlap.
    parallel_for(count, threads, [&](std::size_t i) {
        for (std::size_t j = i; j < count; ++j) {
            double value = fidelity(*states[i], *states[j]);
            if (options.shots > 0) {
                Rng rng = make_stream(options.seed, i, j);
                value = sample_all_zeros(value, options.shots, rng);
            }
            result.entries(i, j) = value;
            result.entries(j, i) = value;
        }
    });
    return result;
}

std::uint64_t state_preparation_count() noexcept {
    return g_state_preparations.load();
}

void reset_state_preparation_count() noexcept { g_state_preparations = 0; }

std::string gram_to_csv(const GramMatrix &gram) {
    std::ostringstream out;
    out << std::setprecision(17);
    for (std::size_t i = 0; i < gram.entries.rows(); ++i) {
        for (std::size_t j = 0; j < gram.entries.cols(); ++j) {
            out << (j == 0 ? "" : ",") << gram.entries(i, j);
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const GramMatrix &gram) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < gram.entries.rows(); ++i) {
        const auto row = gram.entries.row(i);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    nlohmann::json meta{{"n_qubits", gram.meta.n_qubits},
                        {"shots", gram.meta.shots},
                        {"seed", gram.meta.seed}};
    meta["ansatz"] =
        gram.meta.ansatz ? to_json(*gram.meta.ansatz) : nlohmann::json();
    return {{"entries", rows}, {"meta", meta}};
}

GramMatrix gram_from_json(const nlohmann::json &j) {
    try {
        GramMatrix gram;
        gram.entries = Matrix::from_rows(
            j.at("entries").get<std::vector<std::vector<double>>>());
        const auto &meta = j.at("meta");
        gram.meta.n_qubits = meta.at("n_qubits").get<int>();
        gram.meta.shots = meta.at("shots").get<std::uint64_t>();
        gram.meta.seed = meta.at("seed").get<std::uint64_t>();
        if (meta.contains("ansatz") && !meta.at("ansatz").is_null()) {
            gram.meta.ansatz = ansatz_from_json(meta.at("ansatz"));
        }
        return gram;
    } catch (const nlohmann::json::exception &e) {
        throw Error(Errc::format_error,
                    std::string("bad Gram JSON: ") + e.what());
    }
}

} // namespace qkonc
