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

#include "qkonc/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <set>

#include "qkonc/eigen.hpp"
#include "qkonc/error.hpp"
#include "qkonc/parallel.hpp"
#include "qkonc/rng.hpp"
#include "qkonc/vqa.hpp"

namespace qkonc {

using nlohmann::json;

std::size_t ConditionalSamples::total_count() const noexcept {
    std::size_t total = 0;
    for (const auto &row : rows) {
        total += row.size();
    }
    return total;
}

std::vector<double> ConditionalSamples::pooled() const {
    std::vector<double> all;
    all.reserve(total_count());
    for (const auto &row : rows) {
        all.insert(all.end(), row.begin(), row.end());
    }
    return all;
}

ConditionalSamples conditional_rows(const Matrix &gram) {
    require(gram.rows() == gram.cols(), Errc::dimension_mismatch,
            "Gram matrix must be square");
    ConditionalSamples samples;
    samples.rows.resize(gram.rows());
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            if (i != j) {
                samples.rows[i].push_back(gram(i, j));
            }
        }
    }
    return samples;
}

namespace {

void check_structure(const ConditionalSamples &samples) {
    require(samples.rows.size() >= 2, Errc::insufficient_samples,
            "need at least 2 anchors, got " +
                std::to_string(samples.rows.size()));
    for (const auto &row : samples.rows) {
        require(row.size() >= 2, Errc::insufficient_samples,
                "every anchor needs at least 2 draws");
    }
}

ConcentrationReport build_report(const ConditionalSamples &samples,
                                 std::span<const double> pooled,
                                 std::span<const double> deltas) {
    check_structure(samples);
    ConcentrationReport r;
    const SampleSummary total = summarize(pooled);
    r.anchors = samples.rows.size();
    r.pooled_count = pooled.size();
    r.mean = total.mean;
    r.se_mean = total.se_mean;
    r.variance = total.variance;
    r.se_variance = total.se_variance;

    bool first = true;
    for (const auto &row : samples.rows) {
        const SampleSummary s = summarize(row);
        r.conditional_variances.push_back(s.variance);
        if (first || s.variance < r.conditional_min) {
            r.conditional_min = s.variance;
            r.conditional_min_se = s.se_variance;
        }
        if (first || s.variance > r.conditional_max) {
            r.conditional_max = s.variance;
            r.conditional_max_se = s.se_variance;
        }
        first = false;
    }

    for (const double v : pooled) {
        r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(v - r.mean));
    }
    for (const double delta : deltas) {
        require(delta > 0.0, Errc::invalid_argument, "delta must be > 0");
        std::size_t hits = 0;
        for (const double v : pooled) {
            hits += std::abs(v - r.mean) >= delta ? 1 : 0;
        }
        const double p =
            static_cast<double>(hits) / static_cast<double>(pooled.size());
        r.tails.push_back(TailReport{delta, p, proportion_se(p, pooled.size()),
                                     r.variance / (delta * delta)});
    }
    return r;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<double> residuals;
};

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        fit.residuals.push_back(r);
        ss_res += r * r;
    }
    // A flat response is fitted perfectly by a zero slope.
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

} // namespace

ConcentrationReport concentration_report(const ConditionalSamples &samples,
                                         std::span<const double> deltas) {
    check_structure(samples);
    const auto pooled = samples.pooled();
    return build_report(samples, pooled, deltas);
}

ConcentrationReport concentration_report(const GramMatrix &gram,
                                         std::span<const double> deltas) {
    const Matrix &k = gram.entries;
    require(k.rows() >= 3, Errc::insufficient_samples,
            "Gram matrix needs at least 3 points for conditional statistics");
    std::vector<double> upper;
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = i + 1; j < k.cols(); ++j) {
            upper.push_back(k(i, j));
        }
    }
    ConcentrationReport r = build_report(conditional_rows(k), upper, deltas);
    r.n_qubits = gram.meta.n_qubits;
    return r;
}

VarianceDecomposition decompose_variance(const ConditionalSamples &samples) {
    check_structure(samples);
    const auto pooled = samples.pooled();
    const auto total_n = static_cast<double>(pooled.size());
    double grand = 0.0;
    for (const double v : pooled) {
        grand += v;
    }
    grand /= total_n;

    VarianceDecomposition d;
    for (const double v : pooled) {
        d.total += (v - grand) * (v - grand);
    }
    d.total /= total_n;
    for (const auto &row : samples.rows) {
        const auto n = static_cast<double>(row.size());
        double mean = 0.0;
        for (const double v : row) {
            mean += v;
        }
        mean /= n;
        double var = 0.0;
        for (const double v : row) {
            var += (v - mean) * (v - mean);
        }
        var /= n;
        const double weight = n / total_n;
        d.within += weight * var;
        d.between += weight * (mean - grand) * (mean - grand);
    }
    return d;
}

std::string_view to_string(DecayClass c) noexcept {
    switch (c) {
    case DecayClass::exponential:
        return "exponential";
    case DecayClass::polynomial:
        return "polynomial";
    case DecayClass::inconclusive:
        return "inconclusive";
    }
    return "?";
}

DecayFit fit_decay(std::span<const DecayPoint> points,
                   const DecayThresholds &thresholds) {
    std::set<int> distinct;
    for (const DecayPoint &p : points) {
        require(p.n >= 1, Errc::invalid_argument, "qubit counts must be >= 1");
        require(std::isfinite(p.variance) && p.variance > 0.0,
                Errc::nonpositive_value,
                "variance at n=" + std::to_string(p.n) +
                    " is not positive; cannot take its logarithm");
        distinct.insert(p.n);
    }
    require(distinct.size() >= 3, Errc::insufficient_samples,
            "decay fit needs at least 3 distinct qubit counts");

    std::vector<double> ns;
    std::vector<double> log_ns;
    std::vector<double> log_vars;
    DecayFit fit;
    for (const DecayPoint &p : points) {
        fit.ns.push_back(p.n);
        ns.push_back(static_cast<double>(p.n));
        log_ns.push_back(std::log(static_cast<double>(p.n)));
        log_vars.push_back(std::log(p.variance));
    }
    const LineFit linear = least_squares(ns, log_vars);
    fit.slope = linear.slope;
    fit.intercept = linear.intercept;
    fit.base = std::exp(-linear.slope);
    fit.r2_loglinear = linear.r2;
    fit.residuals = linear.residuals;

    const LineFit loglog = least_squares(log_ns, log_vars);
    fit.poly_exponent = -loglog.slope;
    fit.r2_loglog = loglog.r2;

    if (fit.base >= thresholds.exponential_min_base &&
        fit.r2_loglinear >= thresholds.exponential_min_r2) {
        fit.classification = DecayClass::exponential;
    } else if (fit.base <= thresholds.polynomial_max_base) {
        fit.classification = DecayClass::polynomial;
    } else {
        fit.classification = DecayClass::inconclusive;
    }
    return fit;
}

SpectrumReport spectrum_flatness(const Matrix &symmetric) {
    const EigenDecomposition eig = jacobi_eigen(symmetric);
    SpectrumReport report;
    report.eigenvalues = eig.values;
    double sum = 0.0;
    for (const double v : eig.values) {
        sum += std::max(v, 0.0);
    }
    require(sum > 0.0, Errc::degenerate_data,
            "spectrum has no positive mass; flatness undefined");
    double entropy = 0.0;
    for (const double v : eig.values) {
        const double p = std::max(v, 0.0) / sum;
        if (p > 0.0) {
            entropy -= p * std::log(p);
        }
    }
    report.flatness =
        std::exp(entropy) / static_cast<double>(eig.values.size());
    return report;
}

SpectrumReport spectrum_flatness(const GramMatrix &gram) {
    return spectrum_flatness(gram.entries);
}

LemmaReport lemma_check(const ConditionalSamples &samples, double sigmas) {
    const ConcentrationReport c = concentration_report(samples);
    LemmaReport r;
    r.sigmas = sigmas;
    r.anchors = c.anchors;
    r.pooled_count = c.pooled_count;
    r.total_variance = c.variance;
    r.total_variance_se = c.se_variance;
    r.max_conditional = c.conditional_max;
    r.max_conditional_se = c.conditional_max_se;
    r.min_conditional = c.conditional_min;
    r.min_conditional_se = c.conditional_min_se;
    r.upper_bound = 2.0 * c.conditional_max;
    r.upper_tolerance =
        sigmas * std::sqrt(c.se_variance * c.se_variance +
                           4.0 * c.conditional_max_se * c.conditional_max_se);
    r.lower_tolerance =
        sigmas * std::sqrt(c.se_variance * c.se_variance +
                           c.conditional_min_se * c.conditional_min_se);
    r.upper_pass = r.total_variance <= r.upper_bound + r.upper_tolerance;
    r.lower_pass = r.total_variance >= r.min_conditional - r.lower_tolerance;
    r.decomposition = decompose_variance(samples);
    return r;
}

Interval default_domain() noexcept {
    return {-std::numbers::pi, std::numbers::pi};
}

TheoremReport theorem_check(const AnsatzSpec &ansatz,
                            const TheoremCheckConfig &config) {
    require(config.data_domain == config.theta_domain,
            Errc::distribution_mismatch,
            "data and parameter distributions differ; the substitution "
            "theta -> x' needs identical distributions");
    require(config.data_domain.lo < config.data_domain.hi,
            Errc::invalid_argument, "empty sampling domain");
    require(config.anchors >= 2 && config.draws >= 2,
            Errc::insufficient_samples,
            "theorem check needs >= 2 anchors and >= 2 draws");

    const Circuit encoding = build_encoding(ansatz);
    const CostSpec cost_spec = CostSpec::kernel_construction(encoding);
    const auto d = static_cast<std::size_t>(encoding.n_data_slots());
    const Interval dom = config.data_domain;
    const Interval tdom = config.theta_domain;

    ConditionalSamples kernel_samples;
    ConditionalSamples cost_samples;
    kernel_samples.rows.resize(config.anchors);
    cost_samples.rows.resize(config.anchors);
    std::vector<double> route_gap(config.anchors, 0.0);

    parallel_for(config.anchors, resolve_threads(config.threads),
                 [&](std::size_t i) {
        Rng anchor_rng = make_stream(config.seed, 0, i);
        std::vector<double> x(d);
        for (double &v : x) {
            v = uniform(anchor_rng, dom.lo, dom.hi);
        }
        auto &krow = kernel_samples.rows[i];
        auto &crow = cost_samples.rows[i];
        krow.resize(config.draws);
        crow.resize(config.draws);
        for (std::size_t j = 0; j < config.draws; ++j) {
            Rng draw_rng = make_stream(config.seed, i + 1, j);
            std::vector<double> partner(d);
            for (double &v : partner) {
                v = uniform(draw_rng, tdom.lo, tdom.hi);
            }
            krow[j] = kernel_entry_compiled(encoding, x, partner);
            crow[j] = cost(cost_spec, partner, x);
            const double overlap = kernel_entry(encoding, x, partner);
            route_gap[i] = std::max(route_gap[i], std::abs(overlap - krow[j]));
        }
    });

    TheoremReport report;
    report.ansatz = ansatz;
    report.n_params = static_cast<int>(d);
    report.kernel = lemma_check(kernel_samples, config.sigmas);
    report.identity_bit_exact = true;
    for (std::size_t i = 0; i < config.anchors; ++i) {
        const double kv = summarize(kernel_samples.rows[i]).variance;
        const double cv = summarize(cost_samples.rows[i]).variance;
        report.kernel_conditional_variances.push_back(kv);
        report.cost_variances.push_back(cv);
        report.identity_bit_exact =
            report.identity_bit_exact &&
            std::memcmp(&kv, &cv, sizeof(double)) == 0;
        report.max_route_gap = std::max(report.max_route_gap, route_gap[i]);
    }
    report.pass = report.kernel.pass() && report.identity_bit_exact &&
                  report.max_route_gap <= 1e-12;
    return report;
}

// -- JSON ----------------------------------------------------------------------

namespace {

json tails_json(const std::vector<TailReport> &tails) {
    json out = json::array();
    for (const TailReport &t : tails) {
        out.push_back(json{{"delta", t.delta},
                           {"empirical", t.empirical},
                           {"empirical_se", t.empirical_se},
                           {"chebyshev_bound", t.chebyshev_bound}});
    }
    return out;
}

} // namespace

json to_json(const ConcentrationReport &r) {
    return json{{"n_qubits", r.n_qubits},
                {"anchors", r.anchors},
                {"pooled_count", r.pooled_count},
                {"mean", r.mean},
                {"se_mean", r.se_mean},
                {"variance", r.variance},
                {"se_variance", r.se_variance},
                {"conditional_min", r.conditional_min},
                {"conditional_min_se", r.conditional_min_se},
                {"conditional_max", r.conditional_max},
                {"conditional_max_se", r.conditional_max_se},
                {"conditional_variances", r.conditional_variances},
                {"max_abs_deviation", r.max_abs_deviation},
                {"tails", tails_json(r.tails)}};
}

json to_json(const DecayFit &f) {
    return json{{"ns", f.ns},
                {"slope", f.slope},
                {"intercept", f.intercept},
                {"base", f.base},
                {"r2_loglinear", f.r2_loglinear},
                {"residuals", f.residuals},
                {"poly_exponent", f.poly_exponent},
                {"r2_loglog", f.r2_loglog},
                {"classification", to_string(f.classification)}};
}

json to_json(const SpectrumReport &s) {
    return json{{"eigenvalues", s.eigenvalues}, {"flatness", s.flatness}};
}

json to_json(const LemmaReport &r) {
    return json{{"anchors", r.anchors},
                {"pooled_count", r.pooled_count},
                {"total_variance", r.total_variance},
                {"total_variance_se", r.total_variance_se},
                {"max_conditional", r.max_conditional},
                {"max_conditional_se", r.max_conditional_se},
                {"min_conditional", r.min_conditional},
                {"min_conditional_se", r.min_conditional_se},
                {"upper_bound", r.upper_bound},
                {"upper_tolerance", r.upper_tolerance},
                {"lower_tolerance", r.lower_tolerance},
                {"sigmas", r.sigmas},
                {"upper_pass", r.upper_pass},
                {"lower_pass", r.lower_pass},
                {"decomposition",
                 {{"total", r.decomposition.total},
                  {"within", r.decomposition.within},
                  {"between", r.decomposition.between}}}};
}

json to_json(const TheoremReport &r) {
    return json{{"ansatz", to_json(r.ansatz)},
                {"n_params", r.n_params},
                {"kernel", to_json(r.kernel)},
                {"kernel_conditional_variances", r.kernel_conditional_variances},
                {"cost_variances", r.cost_variances},
                {"identity_bit_exact", r.identity_bit_exact},
                {"max_route_gap", r.max_route_gap},
                {"pass", r.pass}};
}

} // namespace qkonc
