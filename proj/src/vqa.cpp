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

#include "qkonc/vqa.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qkonc/error.hpp"
#include "qkonc/parallel.hpp"
#include "qkonc/rng.hpp"

namespace qkonc {

namespace {

constexpr double kPi = std::numbers::pi;

struct SlotUse {
    int count = 0;
    const Gate *gate = nullptr;
};

SlotUse find_uses(const Circuit &circuit, int index) {
    SlotUse use;
    for (const Gate &gate : circuit.gates()) {
        bool hit = false;
        if (const auto *t = std::get_if<Theta>(&gate.slot)) {
            hit = t->index == index;
        } else if (const auto *e = std::get_if<DataExpr>(&gate.slot)) {
            if (e->source == SlotSource::theta) {
                for (const ExprFactor &f : e->factors) {
                    hit = hit || f.index == index;
                }
            }
        }
        if (hit) {
            ++use.count;
            use.gate = &gate;
        }
    }
    return use;
}

double shifted_cost(const CostSpec &spec, std::vector<double> &theta,
                    std::span<const double> x, std::size_t slot,
                    double delta) {
    const double saved = theta[slot];
    theta[slot] = saved + delta;
    const double value = cost(spec, theta, x);
    theta[slot] = saved;
    return value;
}

} // namespace

CostSpec::CostSpec(Circuit embedding_, Circuit variational_,
                   std::vector<double> weights_)
    : embedding(std::move(embedding_)), variational(std::move(variational_)),
      weights(std::move(weights_)) {
    require(embedding.n_qubits() == variational.n_qubits(),
            Errc::dimension_mismatch,
            "embedding and variational circuits act on different registers");
    require(embedding.n_theta_slots() == 0, Errc::invalid_argument,
            "embedding circuit must only read data slots");
    require(variational.n_data_slots() == 0, Errc::invalid_argument,
            "variational circuit must only read theta slots");
    for (const double w : weights) {
        require(std::isfinite(w), Errc::non_finite, "non-finite cost weight");
    }
}

CostSpec CostSpec::kernel_construction(const Circuit &encoding) {
    require(encoding.n_theta_slots() == 0, Errc::invalid_argument,
            "kernel construction needs a pure data-encoding circuit");
    return {encoding, encoding.adjoint().swap_roles()};
}

CostSpec CostSpec::variational_only(const Circuit &variational) {
    return {Circuit(variational.n_qubits(), 0, 0, {}), variational};
}

double cost(const CostSpec &spec, std::span<const double> theta,
            std::span<const double> x) {
    StateVector state(spec.embedding.n_qubits());
    run(state, bind(spec.embedding, x, {}));
    run(state, bind(spec.variational, {}, theta));
    return prob_all_zeros(state);
}

double weighted_cost(const CostSpec &spec, std::span<const double> theta,
                     const Matrix &dataset) {
    const std::size_t count = dataset.rows();
    require(count >= 1, Errc::invalid_argument, "empty dataset");
    require(spec.weights.empty() || spec.weights.size() == count,
            Errc::dimension_mismatch, "one weight per data point required");
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double w = spec.weights.empty()
                             ? 1.0 / static_cast<double>(count)
                             : spec.weights[i];
        total += w * cost(spec, theta, dataset.row(i));
    }
    return total;
}

bool parameter_shift_eligible(const CostSpec &spec, int index) {
    const SlotUse use = find_uses(spec.variational, index);
    if (use.count != 1) {
        return false;
    }
    const auto *t = std::get_if<Theta>(&use.gate->slot);
    return t != nullptr && t->scale != 0.0 &&
           is_single_pauli_rotation(use.gate->kind);
}

std::vector<double> gradient(const CostSpec &spec,
                             std::span<const double> theta,
                             std::span<const double> x,
                             const GradientMethod &method) {
    require(static_cast<int>(theta.size()) == spec.n_params(),
            Errc::dimension_mismatch, "parameter vector length mismatch");
    for (const double v : theta) {
        require(std::isfinite(v), Errc::non_finite, "non-finite parameter");
    }
    require(method.step > 0.0 && std::isfinite(method.step),
            Errc::invalid_argument, "finite-difference step must be > 0");

    std::vector<double> work(theta.begin(), theta.end());
    std::vector<double> grad(theta.size(), 0.0);
    for (std::size_t mu = 0; mu < theta.size(); ++mu) {
        const int index = static_cast<int>(mu);
        const SlotUse use = find_uses(spec.variational, index);
        if (use.count == 0) {
            continue; // C does not depend on this slot
        }
        const bool eligible = parameter_shift_eligible(spec, index);
        if (method.rule == GradientRule::parameter_shift && !eligible) {
            throw Error(Errc::unsupported_rule,
                        "parameter shift is not exact for slot " +
                            std::to_string(mu) + " (" +
                            std::string(to_string(use.gate->kind)) +
                            (use.count > 1 ? ", shared by several gates"
                                           : "") +
                            ")");
        }
        const bool shift =
            method.rule == GradientRule::parameter_shift ||
            (method.rule == GradientRule::automatic && eligible);
        if (shift) {
            // Angle phi = s * theta with s the signed scale; the two-term rule
            // in phi is dC/dphi = (C(phi + pi/2) - C(phi - pi/2)) / 2.
            const auto &t = std::get<Theta>(use.gate->slot);
            const double s = use.gate->adjoint ? -t.scale : t.scale;
            const double d = kPi / (2.0 * s);
            grad[mu] = s *
                       (shifted_cost(spec, work, x, mu, d) -
                        shifted_cost(spec, work, x, mu, -d)) /
                       2.0;
        } else {
            const double h = method.step;
            grad[mu] = (shifted_cost(spec, work, x, mu, h) -
                        shifted_cost(spec, work, x, mu, -h)) /
                       (2.0 * h);
        }
    }
    return grad;
}

std::vector<double> sample_theta(int n_params, std::uint64_t seed,
                                 std::uint64_t sample) {
    Rng rng = make_stream(seed, sample);
    std::vector<double> theta(static_cast<std::size_t>(n_params));
    for (double &v : theta) {
        v = uniform(rng, -kPi, kPi);
    }
    return theta;
}

BpVarianceReport bp_variance(const CostSpec &spec, std::span<const double> x,
                             const MonteCarloOptions &options,
                             const GradientMethod &method) {
    require(options.samples >= 2, Errc::insufficient_samples,
            "gradient variance needs at least 2 samples");
    const auto m = static_cast<std::size_t>(spec.n_params());
    const std::size_t count = options.samples;
    // grads[s * m + mu]
    std::vector<double> grads(count * m);
    parallel_for(count, resolve_threads(options.threads), [&](std::size_t s) {
        const auto theta = sample_theta(spec.n_params(), options.seed, s);
        const auto g = gradient(spec, theta, x, method);
        std::copy(g.begin(), g.end(),
                  grads.begin() + static_cast<std::ptrdiff_t>(s * m));
    });

    BpVarianceReport report;
    report.samples = count;
    std::vector<double> column(count);
    double sum = 0.0;
    for (std::size_t mu = 0; mu < m; ++mu) {
        for (std::size_t s = 0; s < count; ++s) {
            column[s] = grads[s * m + mu];
        }
        report.per_slot.push_back(summarize(column));
        const SampleSummary &stats = report.per_slot.back();
        sum += stats.variance;
        if (report.argmax_slot < 0 || stats.variance > report.max_variance) {
            report.max_variance = stats.variance;
            report.max_variance_se = stats.se_variance;
            report.argmax_slot = static_cast<int>(mu);
        }
    }
    report.mean_variance = m == 0 ? 0.0 : sum / static_cast<double>(m);
    return report;
}

std::vector<double> sample_costs(const CostSpec &spec,
                                 std::span<const double> x,
                                 const MonteCarloOptions &options) {
    std::vector<double> values(options.samples);
    parallel_for(options.samples, resolve_threads(options.threads),
                 [&](std::size_t s) {
                     const auto theta =
                         sample_theta(spec.n_params(), options.seed, s);
                     values[s] = cost(spec, theta, x);
                 });
    return values;
}

CostConcentrationReport cost_concentration(const CostSpec &spec,
                                           std::span<const double> x,
                                           const MonteCarloOptions &options,
                                           std::span<const double> deltas) {
    require(options.samples >= 2, Errc::insufficient_samples,
            "cost concentration needs at least 2 samples");
    const auto values = sample_costs(spec, x, options);

    CostConcentrationReport report;
    report.cost = summarize(values);
    std::vector<double> shifted(values.size());
    for (std::size_t s = 0; s < values.size(); ++s) {
        shifted[s] = report.cost.mean - values[s];
    }
    report.shifted_variance = summarize(shifted).variance;

    for (const double delta : deltas) {
        require(delta > 0.0, Errc::invalid_argument, "delta must be > 0");
        std::size_t hits = 0;
        for (const double v : values) {
            hits += std::abs(v - report.cost.mean) >= delta ? 1 : 0;
        }
        const double p =
            static_cast<double>(hits) / static_cast<double>(values.size());
        report.tails.push_back(TailReport{delta, p,
                                          proportion_se(p, values.size()),
                                          report.cost.variance /
                                              (delta * delta)});
    }
    return report;
}

} // namespace qkonc
