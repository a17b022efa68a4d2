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
 * Cost landscapes C(theta, x) = <0|V(theta) U(x) rho_0 U(x)^dag V(theta)^dag|0>
 * with the global all-zeros projector as the observable, plus the
 * Monte-Carlo estimators used to detect barren plateaus (gradient variance)
 * and cost concentration (cost variance) over theta ~ U([-pi, pi]^m).
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qkonc/circuit.hpp"
#include "qkonc/matrix.hpp"
#include "qkonc/stats.hpp"

namespace qkonc {

struct CostSpec {
    Circuit embedding;           // U(x): data slots only
    Circuit variational;         // V(theta): theta slots only
    std::vector<double> weights; // per data point; empty = uniform 1/N

    CostSpec(Circuit embedding, Circuit variational,
             std::vector<double> weights = {});

    /// The kernel-construction cost: U = W(x) and V(theta) = W(theta)^dag, so
    /// that C(theta, x) equals the kernel k(x, theta).
    static CostSpec kernel_construction(const Circuit &encoding);

    /// No embedding; only the variational block acts on |0...0>.
    static CostSpec variational_only(const Circuit &variational);

    [[nodiscard]] int n_params() const noexcept {
        return variational.n_theta_slots();
    }
    [[nodiscard]] int n_data() const noexcept {
        return embedding.n_data_slots();
    }
};

double cost(const CostSpec &spec, std::span<const double> theta,
            std::span<const double> x);

/// sum_i c_i C(theta, x_i) over the rows of `dataset`.
double weighted_cost(const CostSpec &spec, std::span<const double> theta,
                     const Matrix &dataset);

enum class GradientRule { automatic, parameter_shift, central_difference };

struct GradientMethod {
    GradientRule rule = GradientRule::automatic;
    double step = 1e-5; // central differences only
};

/// Whether slot `index` can be differentiated with the two-term shift rule:
/// it must appear exactly once, as a plain Theta slot of a single-Pauli
/// rotation.
bool parameter_shift_eligible(const CostSpec &spec, int index);

/// dC/dtheta per slot. `automatic` uses parameter shift where eligible and
/// central differences elsewhere; `parameter_shift` throws unsupported_rule
/// on an ineligible slot.
std::vector<double> gradient(const CostSpec &spec,
                             std::span<const double> theta,
                             std::span<const double> x,
                             const GradientMethod &method = {});

struct MonteCarloOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// theta sample s is drawn from stream (seed, s), uniform on [-pi, pi]^m.
std::vector<double> sample_theta(int n_params, std::uint64_t seed,
                                 std::uint64_t sample);

struct BpVarianceReport {
    std::vector<SampleSummary> per_slot; // statistics of dC/dtheta_mu
    double max_variance = 0.0;
    double max_variance_se = 0.0;
    int argmax_slot = -1;
    double mean_variance = 0.0;
    std::size_t samples = 0;
};

BpVarianceReport bp_variance(const CostSpec &spec, std::span<const double> x,
                             const MonteCarloOptions &options,
                             const GradientMethod &method = {});

struct CostConcentrationReport {
    SampleSummary cost;
    // Variance of mean - C(theta_A, x): identical to cost.variance up to
    // rounding since the shift is constant.
    double shifted_variance = 0.0;
    std::vector<TailReport> tails;
};

CostConcentrationReport cost_concentration(const CostSpec &spec,
                                           std::span<const double> x,
                                           const MonteCarloOptions &options,
                                           std::span<const double> deltas = {});

/// Cost values C(theta_s, x) for s in [0, samples), in sample order.
std::vector<double> sample_costs(const CostSpec &spec,
                                 std::span<const double> x,
                                 const MonteCarloOptions &options);

} // namespace qkonc
