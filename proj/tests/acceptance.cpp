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


// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 2 5        run criteria 2 and 5
//
// Exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qkonc/circuit.hpp"
#include "qkonc/concentration.hpp"
#include "qkonc/data.hpp"
#include "qkonc/eigen.hpp"
#include "qkonc/experiments.hpp"
#include "qkonc/kernel.hpp"
#include "qkonc/rng.hpp"
#include "qkonc/statevec.hpp"
#include "qkonc/stats.hpp"
#include "qkonc/vqa.hpp"

using namespace qkonc;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20260101;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Off-diagonal kernel statistics for one qubit count on synthetic data.
ConcentrationReport synthetic_report(const AnsatzSpec &spec, std::size_t points) {
    const Circuit enc = build_encoding(spec);
    const Dataset ds = synthetic_uniform(points, static_cast<std::size_t>(enc.n_data_slots()),
                                         stream_seed(kSeed, static_cast<std::uint64_t>(spec.n_qubits)));
    return concentration_report(gram(enc, ds.features, {0, 0, 0}));
}

Verdict exponential_concentration() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<DecayPoint> pts;
    double mu10 = 1.0;
    for (int n = 2; n <= 10; n += 2) {
        const auto r = synthetic_report({AnsatzFamily::HavlicekZZ, n, 2, Entanglement::full, 0}, 100);
        pts.push_back({n, r.variance});
        if (n == 10)
            mu10 = r.mean;
    }
    const DecayFit fit = fit_decay(pts);
    const double secs = seconds_since(t0);
    const bool pass = mu10 < 0.05 && fit.classification == DecayClass::exponential &&
                      fit.base >= 1.5 && secs < 120.0;
    return {pass, fmt("mean(n=10)=%.4g (<0.05), b=%.4g (>=1.5), class=%s, %.1fs (<120s)", mu10,
                      fit.base, std::string(to_string(fit.classification)).c_str(), secs)};
}

Verdict moderate_decay() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<DecayPoint> pts;
    std::size_t pairs = 0;
    for (int n = 2; n <= 16; n += 2) {
        // 21 points give 210 distinct pairs.
        const auto r = synthetic_report({AnsatzFamily::PermInvariant, n, n, Entanglement::full, 0}, 21);
        pts.push_back({n, r.variance});
        pairs = r.pooled_count;
    }
    const DecayFit fit = fit_decay(pts);
    const double var16 = pts.back().variance;
    const double secs = seconds_since(t0);
    const bool pass = fit.classification == DecayClass::polynomial && fit.base <= 1.1 &&
                      var16 >= 1e-3 && pairs >= 200 && secs < 600.0;
    return {pass, fmt("b=%.4g (<=1.1), class=%s, Var(n=16)=%.4g (>=1e-3), pairs/n=%zu, "
                      "loglog p=%.3g R2=%.3f, %.1fs (<600s)",
                      fit.base, std::string(to_string(fit.classification)).c_str(), var16,
                      pairs, fit.poly_exponent, fit.r2_loglog, secs)};
}

Verdict lemma_analytic() {
    ConditionalSamples s;
    const std::size_t anchors = 10;
    const std::size_t draws = 1000;
    for (std::size_t i = 0; i < anchors; ++i) {
        Rng rng = make_stream(kSeed, 3, i);
        const double x = uniform(rng, -kPi, kPi);
        std::vector<double> row(draws);
        for (auto &v : row)
            v = std::cos(x - uniform(rng, -kPi, kPi));
        s.rows.push_back(std::move(row));
    }
    const LemmaReport r = lemma_check(s);
    bool conditionals_ok = true;
    double worst = 0.0;
    for (const auto &row : s.rows) {
        const SampleSummary c = summarize(row);
        const double z = std::abs(c.variance - 0.5) / c.se_variance;
        worst = std::max(worst, z);
        conditionals_ok = conditionals_ok && z <= 3.0;
    }
    const bool total_ok = std::abs(r.total_variance - 0.5) <= 3 * r.total_variance_se;
    const bool pass = total_ok && conditionals_ok && r.pass() &&
                      r.total_variance <= 2 * r.max_conditional &&
                      r.total_variance >= r.min_conditional - 3 * r.min_conditional_se;
    return {pass, fmt("total=%.4f+-%.4f (0.5 within 3 SE), worst conditional %.2f SE, "
                      "upper %s, lower %s",
                      r.total_variance, r.total_variance_se, worst,
                      r.upper_pass ? "ok" : "FAIL", r.lower_pass ? "ok" : "FAIL")};
}

Verdict theorem_harness() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<AnsatzSpec> suite;
    for (int n = 1; n <= 4; ++n)
        suite.push_back({AnsatzFamily::ProductRX, n, 1, Entanglement::full, 0});
    for (int n = 2; n <= 6; ++n)
        suite.push_back({AnsatzFamily::HavlicekZZ, n, 2, Entanglement::full, 0});
    for (int n = 2; n <= 6; ++n)
        suite.push_back({AnsatzFamily::PermInvariant, n, n, Entanglement::full, 0});
    TheoremCheckConfig cfg;
    cfg.seed = kSeed;
    cfg.threads = 0;
    int passed = 0;
    std::string failed;
    double worst_gap = 0.0;
    for (const auto &spec : suite) {
        const TheoremReport r = theorem_check(spec, cfg);
        worst_gap = std::max(worst_gap, r.max_route_gap);
        if (r.pass && r.identity_bit_exact)
            ++passed;
        else
            failed += " " + std::string(to_string(spec.family)) + "/n" + std::to_string(spec.n_qubits);
    }
    const double secs = seconds_since(t0);
    const bool pass = passed == static_cast<int>(suite.size()) && secs < 300.0;
    return {pass, fmt("%d/%zu ansatz checks pass, route gap %.2g, %.1fs (<300s)%s%s", passed,
                      suite.size(), worst_gap, secs, failed.empty() ? "" : "; failing:",
                      failed.c_str())};
}

Verdict kernel_oracle() {
    const GramMatrix g =
        gram(build_product_rx(1), Matrix::from_rows({{0.0}, {kPi / 2}, {kPi}}), {0, 0, 1});
    const double want[3][3] = {{1, .5, 0}, {.5, 1, .5}, {0, .5, 1}};
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            err = std::max(err, std::abs(g.entries(i, j) - want[i][j]));
    return {err <= 1e-12, fmt("max |G - oracle| = %.3g (<=1e-12)", err)};
}

Verdict gradient_agreement() {
    Rng rng = make_stream(kSeed, 6);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + t % 6;
        const int depth = 1 + static_cast<int>(uniform_index(rng, 4));
        const CostSpec spec = CostSpec::variational_only(
            build_hardware_efficient(n, depth, stream_seed(kSeed, 6, static_cast<std::uint64_t>(t))));
        std::vector<double> theta(static_cast<std::size_t>(spec.n_params()));
        for (auto &v : theta)
            v = uniform(rng, -kPi, kPi);
        const auto ps = gradient(spec, theta, {}, {GradientRule::parameter_shift});
        const auto cd = gradient(spec, theta, {}, {GradientRule::central_difference, 1e-5});
        for (std::size_t k = 0; k < ps.size(); ++k)
            worst = std::max(worst, std::abs(ps[k] - cd[k]));
    }
    return {worst <= 1e-6, fmt("50 circuits, max |shift - difference| = %.3g (<=1e-6)", worst)};
}

Verdict gram_integrity() {
    double asym = 0.0;
    double diag = 0.0;
    double lmin = 1.0;
    int count = 0;
    for (const auto family : {AnsatzFamily::HavlicekZZ, AnsatzFamily::PermInvariant,
                              AnsatzFamily::HardwareEfficient, AnsatzFamily::ProductRX,
                              AnsatzFamily::Identity}) {
        for (int n = 1; n <= 8; ++n) {
            if (family == AnsatzFamily::PermInvariant && n < 2)
                continue;
            const int depth = family == AnsatzFamily::PermInvariant ? n : 2;
            const Circuit enc = build_encoding({family, n, depth, Entanglement::full, kSeed});
            const Dataset ds = synthetic_uniform(
                30, static_cast<std::size_t>(enc.n_data_slots()),
                stream_seed(kSeed, 7, static_cast<std::uint64_t>(n)));
            const GramMatrix g = gram(enc, ds.features, {0, 0, 0});
            asym = std::max(asym, g.entries.asymmetry());
            for (std::size_t i = 0; i < 30; ++i)
                diag = std::max(diag, std::abs(g.entries(i, i) - 1.0));
            lmin = std::min(lmin, jacobi_eigen(g.entries).values.back());
            ++count;
        }
    }
    const bool pass = asym <= 1e-12 && diag <= 1e-12 && lmin >= -1e-9;
    return {pass, fmt("%d matrices: asymmetry %.2g, |diag-1| %.2g (<=1e-12), lambda_min %.3g "
                      "(>=-1e-9)",
                      count, asym, diag, lmin)};
}

Verdict shot_scaling() {
    const Circuit c = build_product_rx(1);
    const double x[] = {0.0};
    const double y[] = {kPi / 2};
    const double exact = kernel_entry(c, x, y);
    std::vector<double> rmse;
    bool each_ok = true;
    std::string detail = fmt("kappa=%.3f;", exact);
    for (const std::uint64_t shots : {100ull, 10000ull, 1000000ull}) {
        Rng rng = make_stream(kSeed, 8, shots);
        double sq = 0.0;
        for (int r = 0; r < 200; ++r) {
            const double e = kernel_entry_shots(c, x, y, shots, rng) - exact;
            sq += e * e;
        }
        const double v = std::sqrt(sq / 200);
        const double ideal = std::sqrt(exact * (1 - exact) / static_cast<double>(shots));
        const double ratio = v / ideal;
        each_ok = each_ok && ratio >= 0.5 && ratio <= 2.0;
        rmse.push_back(v);
        detail += fmt(" M=%llu rmse=%.3g (x%.2f of M^-1/2 law)", static_cast<unsigned long long>(shots), v, ratio);
    }
    bool steps_ok = true;
    for (std::size_t i = 1; i < rmse.size(); ++i) {
        const double step = rmse[i - 1] / rmse[i]; // ideal 10 for a 100x shot increase
        steps_ok = steps_ok && step >= 5.0 && step <= 20.0;
    }
    return {each_ok && steps_ok && std::abs(exact - 0.5) < 1e-12, detail};
}

Verdict pauli_identity() {
    Rng rng = make_stream(kSeed, 9);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 5;
        std::vector<Amplitude> a(std::size_t{1} << n);
        double norm = 0.0;
        for (auto &v : a) {
            v = {g(rng), g(rng)};
            norm += std::norm(v);
        }
        for (auto &v : a)
            v /= std::sqrt(norm);
        const StateVector psi = StateVector::from_amplitudes(a);
        double avg = 0.0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            double e = 0.0;
            for (std::size_t k = 0; k < psi.dimension(); ++k)
                e += ((std::popcount(static_cast<unsigned>(k) & mask) & 1) ? -1.0 : 1.0) *
                     std::norm(psi[k]);
            avg += e;
        }
        avg /= static_cast<double>(1u << n);
        worst = std::max(worst, std::abs(avg - prob_all_zeros(psi)));
    }
    return {worst <= 1e-10, fmt("100 states, max deviation %.3g (<=1e-10)", worst)};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism() {
    const fs::path root = fs::temp_directory_path() / "qkonc-acceptance-determinism";
    fs::remove_all(root);
    SweepConfig c;
    c.family = AnsatzFamily::HavlicekZZ;
    c.qubits = {2, 3, 4, 5};
    c.points = 30;
    c.shots = 1000;
    c.seed = kSeed;
    c.out_dir = (root / "a").string();
    c.threads = 1;
    (void)run_sweep(c);
    c.out_dir = (root / "b").string();
    c.threads = 4;
    (void)run_sweep(c);
    bool same = true;
    for (const char *name : {"sweep.csv", "fit.json"}) {
        const std::string a = slurp(root / "a" / name);
        same = same && !a.empty() && a == slurp(root / "b" / name);
    }
    return {same, same ? "sweep.csv and fit.json byte-identical (1 vs 4 threads)"
                       : "outputs differ between runs"};
}

struct Criterion {
    int id;
    const char *title;
    std::function<Verdict()> run;
};

} // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> all{
        {1, "exponential concentration (Havlicek)", exponential_concentration},
        {2, "moderate decay (permutation invariant)", moderate_decay},
        {3, "variance bounds on cos(x-y)", lemma_analytic},
        {4, "kernel/cost variance harness", theorem_harness},
        {5, "analytic kernel oracle", kernel_oracle},
        {6, "parameter shift vs differences", gradient_agreement},
        {7, "Gram integrity", gram_integrity},
        {8, "shot-noise scaling", shot_scaling},
        {9, "zero-projector Pauli identity", pauli_identity},
        {10, "sweep determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto &c : all) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception &e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        std::printf("AC%-2d %s  %s: %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title,
                    v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
