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
 * Concentration diagnostics for two-argument functions f(x, x') sampled with
 * a conditional structure: a set of anchors x_i, each with its own draws
 * x'_ij. From such samples we estimate the pooled (total) variance, the
 * conditional variances Var_{x'}[f | x_i], Chebyshev tails, and check the
 * two total-variance bounds
 *
 *     Var_total <= 2 max_i Var[f | x_i]     (f symmetric)
 *     Var_total >= min_i Var[f | x_i]
 *
 * at a configurable number of standard errors (3 by default).
 */

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qkonc/circuit.hpp"
#include "qkonc/kernel.hpp"
#include "qkonc/matrix.hpp"
#include "qkonc/stats.hpp"

namespace qkonc {

/// rows[i] holds the draws f(x_i, x'_ij) for anchor i.
struct ConditionalSamples {
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t total_count() const noexcept;
    [[nodiscard]] std::vector<double> pooled() const;
};

/// Off-diagonal rows of a Gram matrix: anchor i, draws k(x_i, x_j), j != i.
ConditionalSamples conditional_rows(const Matrix &gram);

struct ConcentrationReport {
    int n_qubits = 0;
    std::size_t anchors = 0;
    std::size_t pooled_count = 0;
    double mean = 0.0;
    double se_mean = 0.0;
    double variance = 0.0; // pooled total variance
    double se_variance = 0.0;
    std::vector<double> conditional_variances;
    double conditional_min = 0.0;
    double conditional_min_se = 0.0;
    double conditional_max = 0.0;
    double conditional_max_se = 0.0;
    // Largest |f - mean| seen; finite-sample stand-in for the deterministic
    // concentration bound.
    double max_abs_deviation = 0.0;
    std::vector<TailReport> tails;
};

ConcentrationReport concentration_report(const ConditionalSamples &samples,
                                         std::span<const double> deltas = {});

/// Total statistics over the strict upper triangle (each pair once);
/// conditional statistics over rows.
ConcentrationReport concentration_report(const GramMatrix &gram,
                                         std::span<const double> deltas = {});

/// Law-of-total-variance split with 1/n (population) estimators, for which
/// total == within + between holds as an identity.
struct VarianceDecomposition {
    double total = 0.0;
    double within = 0.0;  // E_x[Var[f | x]]
    double between = 0.0; // Var_x[E[f | x]]
};

VarianceDecomposition decompose_variance(const ConditionalSamples &samples);

// -- decay fitting -----------------------------------------------------------

enum class DecayClass { exponential, polynomial, inconclusive };
std::string_view to_string(DecayClass c) noexcept;

struct DecayPoint {
    int n = 0;
    double variance = 0.0;
};

struct DecayThresholds {
    double exponential_min_base = 1.2;
    double exponential_min_r2 = 0.9;
    double polynomial_max_base = 1.1;
};

struct DecayFit {
    std::vector<int> ns;
    double slope = 0.0; // d ln Var / dn
    double intercept = 0.0;
    double base = 1.0;  // b = exp(-slope)
    double r2_loglinear = 0.0;
    std::vector<double> residuals; // log-linear residuals, in input order
    double poly_exponent = 0.0;    // Var ~ n^-p
    double r2_loglog = 0.0;
    DecayClass classification = DecayClass::inconclusive;
};

DecayFit fit_decay(std::span<const DecayPoint> points,
                   const DecayThresholds &thresholds = {});

// -- spectrum ----------------------------------------------------------------

struct SpectrumReport {
    std::vector<double> eigenvalues; // descending
    double flatness = 0.0;           // exp(entropy of lambda / sum) / N
};

SpectrumReport spectrum_flatness(const Matrix &symmetric);
SpectrumReport spectrum_flatness(const GramMatrix &gram);

// -- bound checks --------------------------------------------------------------

struct LemmaReport {
    std::size_t anchors = 0;
    std::size_t pooled_count = 0;
    double total_variance = 0.0;
    double total_variance_se = 0.0;
    double max_conditional = 0.0;
    double max_conditional_se = 0.0;
    double min_conditional = 0.0;
    double min_conditional_se = 0.0;
    double upper_bound = 0.0;      // 2 * max_conditional
    double upper_tolerance = 0.0;  // sigmas * combined SE
    double lower_tolerance = 0.0;
    double sigmas = 3.0;
    bool upper_pass = false;       // total <= 2 max + tol
    bool lower_pass = false;       // total >= min - tol
    VarianceDecomposition decomposition;

    [[nodiscard]] bool pass() const noexcept { return upper_pass && lower_pass; }
};

LemmaReport lemma_check(const ConditionalSamples &samples, double sigmas = 3.0);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Interval &, const Interval &) = default;
};

Interval default_domain() noexcept; // [-pi, pi]

struct TheoremCheckConfig {
    std::size_t anchors = 20;
    std::size_t draws = 200;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double sigmas = 3.0;
    Interval data_domain = default_domain();
    Interval theta_domain = default_domain();
};

struct TheoremReport {
    AnsatzSpec ansatz;
    int n_params = 0;
    LemmaReport kernel; // bound checks on kernel samples
    std::vector<double> kernel_conditional_variances;
    std::vector<double> cost_variances; // Var_theta[C(theta, x_i)]
    bool identity_bit_exact = false;    // the two lists above match bitwise
    double max_route_gap = 0.0; // |overlap route - inversion-circuit route|
    bool pass = false;
};

/// Draws anchors x_i and partners x'_ij = theta_ij from the configured
/// domains, evaluates the kernel k(x_i, x'_ij) and the kernel-construction
/// cost C(theta_ij, x_i), and checks both the variance bounds and that the
/// conditional kernel variance equals the cost variance bit for bit.
TheoremReport theorem_check(const AnsatzSpec &ansatz,
                            const TheoremCheckConfig &config);

nlohmann::json to_json(const ConcentrationReport &r);
nlohmann::json to_json(const DecayFit &f);
nlohmann::json to_json(const SpectrumReport &s);
nlohmann::json to_json(const LemmaReport &r);
nlohmann::json to_json(const TheoremReport &r);

} // namespace qkonc
