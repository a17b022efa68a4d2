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


#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "qkonc/concentration.hpp"
#include "qkonc/eigen.hpp"
#include "qkonc/error.hpp"
#include "qkonc/stats.hpp"

using namespace qkonc;
using qkonc::testing::kPi;

namespace {

template <class F>
ConditionalSamples draw(std::size_t anchors, std::size_t draws, std::uint64_t seed,
                        double lo, double hi, F f) {
    ConditionalSamples s;
    for (std::size_t i = 0; i < anchors; ++i) {
        Rng rng = make_stream(seed, i);
        const double x = uniform(rng, lo, hi);
        std::vector<double> row(draws);
        for (auto &v : row)
            v = f(x, uniform(rng, lo, hi));
        s.rows.push_back(std::move(row));
    }
    return s;
}

std::vector<DecayPoint> sequence(int lo, int hi, double (*var)(int)) {
    std::vector<DecayPoint> pts;
    for (int n = lo; n <= hi; ++n)
        pts.push_back({n, var(n)});
    return pts;
}

} // namespace

TEST_SUITE("stats") {

TEST_CASE("summary of a small sample") {
    const double v[] = {1, 2, 3, 4};
    const SampleSummary s = summarize(v);
    CHECK(s.mean == 2.5);
    CHECK(s.variance == doctest::Approx(5.0 / 3.0));
    CHECK(s.se_mean == doctest::Approx(std::sqrt(5.0 / 12.0)));
    CHECK_THROWS_AS(summarize(std::span<const double>(v, 1)), Error);
}

TEST_CASE("proportion standard error") {
    CHECK(proportion_se(0.5, 100) == doctest::Approx(0.05));
    CHECK(proportion_se(0.0, 100) == 0.0);
}

}

TEST_SUITE("eigen") {

TEST_CASE("two by two") {
    const auto e = jacobi_eigen(Matrix::from_rows({{1, .5}, {.5, 1}}));
    CHECK(e.values[0] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("reconstruction and trace on random symmetric matrices") {
    Rng rng = make_stream(51, 0);
    for (std::size_t n : {1u, 3u, 8u, 20u}) {
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                a(i, j) = a(j, i) = uniform(rng, -1, 1);
        const auto e = jacobi_eigen(a);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            trace += a(i, i);
        CHECK(std::accumulate(e.values.begin(), e.values.end(), 0.0) ==
              doctest::Approx(trace).epsilon(1e-10));
        CHECK(std::is_sorted(e.values.rbegin(), e.values.rend()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double r = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    r += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
                CHECK(std::abs(r - a(i, j)) <= 1e-10);
            }
    }
}

TEST_CASE("asymmetric input is rejected") {
    try {
        (void)jacobi_eigen(Matrix::from_rows({{1, 0.1}, {0.2, 1}}));
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::asymmetric_input);
    }
}

}

TEST_SUITE("concentration") {

TEST_CASE("identical values have zero variance and no tails") {
    ConditionalSamples s{{{0.4, 0.4, 0.4}, {0.4, 0.4, 0.4}}};
    const double deltas[] = {0.1};
    const auto r = concentration_report(s, deltas);
    CHECK(r.variance == 0.0);
    CHECK(r.conditional_max == 0.0);
    CHECK(r.tails[0].empirical == 0.0);
}

TEST_CASE("cos squared half difference") {
    const auto s = draw(100, 100, 52, -kPi, kPi,
                        [](double x, double y) { return std::pow(std::cos((x - y) / 2), 2); });
    const auto r = concentration_report(s);
    CHECK(std::abs(r.mean - 0.5) <= 3 * r.se_mean);
    CHECK(std::abs(r.variance - 0.125) <= 3 * r.se_variance);
    CHECK(r.conditional_min <= r.conditional_max);
}

TEST_CASE("gram report pools each pair once") {
    const Matrix g = Matrix::from_rows({{1, .2, .4}, {.2, 1, .6}, {.4, .6, 1}});
    const auto r = concentration_report(GramMatrix{g, {}});
    CHECK(r.pooled_count == 3);
    CHECK(r.mean == doctest::Approx(0.4));
    CHECK(r.variance == doctest::Approx(0.04));
    CHECK(r.max_abs_deviation == doctest::Approx(0.2));
}

TEST_CASE("law of total variance is an identity") {
    Rng rng = make_stream(53, 0);
    for (int t = 0; t < 10; ++t) {
        ConditionalSamples s;
        const std::size_t anchors = 2 + uniform_index(rng, 10);
        for (std::size_t i = 0; i < anchors; ++i) {
            std::vector<double> row(5);
            for (auto &v : row)
                v = uniform(rng, -1, 1) + static_cast<double>(i);
            s.rows.push_back(row);
        }
        const auto d = decompose_variance(s);
        CHECK(std::abs(d.total - (d.within + d.between)) <= 1e-12);
    }
}

TEST_CASE("law of total variance within 3 se on a sampled function") {
    const auto s = draw(200, 200, 54, -kPi, kPi,
                        [](double x, double y) { return std::sin(x) * std::cos(y) + 0.5 * y; });
    const auto d = decompose_variance(s);
    const auto r = concentration_report(s);
    CHECK(std::abs(r.variance - (d.within + d.between)) <= 3 * r.se_variance);
}

TEST_CASE("fit of 4^-n") {
    const auto pts = sequence(2, 10, [](int n) { return std::pow(4.0, -n); });
    const DecayFit f = fit_decay(pts);
    CHECK(std::abs(f.base - 4.0) <= 1e-9);
    CHECK(f.classification == DecayClass::exponential);
    CHECK(f.r2_loglinear == doctest::Approx(1.0));
}

TEST_CASE("fit of 1/n^2 on 4..16") {
    // The log-linear base of this sequence is 1.2467 with R^2 = 0.965, so the
    // fixed thresholds call it exponential; the log-log fit recovers p = 2.
    const auto pts = sequence(4, 16, [](int n) { return 1.0 / (n * n); });
    const DecayFit f = fit_decay(pts);
    CHECK(f.base == doctest::Approx(1.2467).epsilon(1e-4));
    CHECK(f.classification == DecayClass::exponential);
    CHECK(f.poly_exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.r2_loglog == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit of a flat sequence") {
    const auto pts = sequence(2, 8, [](int) { return 0.3; });
    const DecayFit f = fit_decay(pts);
    CHECK(f.base == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(f.poly_exponent) <= 1e-12);
    CHECK(f.classification == DecayClass::polynomial);
}

TEST_CASE("fit preconditions") {
    const std::vector<DecayPoint> two{{2, 0.1}, {3, 0.05}};
    CHECK_THROWS_AS(fit_decay(two), Error);
    const std::vector<DecayPoint> zero{{2, 0.1}, {3, 0.0}, {4, 0.01}};
    try {
        (void)fit_decay(zero);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::nonpositive_value);
    }
}

TEST_CASE("spectrum flatness") {
    const auto id = spectrum_flatness(Matrix::identity(10));
    CHECK(id.flatness == doctest::Approx(1.0).epsilon(1e-12));
    const auto ones = spectrum_flatness(Matrix(10, 10, 1.0));
    CHECK(ones.eigenvalues[0] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::abs(ones.eigenvalues[9]) <= 1e-12);
    CHECK(ones.flatness == doctest::Approx(0.1).epsilon(1e-12));
    const auto two = spectrum_flatness(Matrix::from_rows({{1, .5}, {.5, 1}}));
    CHECK(two.eigenvalues[0] == doctest::Approx(1.5));
    CHECK(two.eigenvalues[1] == doctest::Approx(0.5));
}

TEST_CASE("lemma check on cos difference") {
    const auto s = draw(100, 100, 55, -kPi, kPi,
                        [](double x, double y) { return std::cos(x - y); });
    const LemmaReport r = lemma_check(s);
    CHECK(r.pass());
    CHECK(std::abs(r.total_variance - 0.5) <= 3 * r.total_variance_se);
}

TEST_CASE("lemma check on a constant passes degenerately") {
    const auto s = draw(5, 5, 56, -kPi, kPi, [](double, double) { return 0.7; });
    const LemmaReport r = lemma_check(s);
    CHECK(r.pass());
    CHECK(r.total_variance == 0.0);
}

TEST_CASE("lemma check on xy over the unit square") {
    const auto s = draw(100, 100, 57, -1.0, 1.0, [](double x, double y) { return x * y; });
    const LemmaReport r = lemma_check(s);
    CHECK(r.pass());
    CHECK(std::abs(r.total_variance - 1.0 / 9.0) <= 3 * r.total_variance_se);
}

TEST_CASE("lemma check catches an asymmetric function") {
    const auto s = draw(20, 200, 58, -kPi, kPi, [](double x, double) { return x; });
    const LemmaReport r = lemma_check(s);
    CHECK_FALSE(r.upper_pass);
    CHECK_FALSE(r.pass());
}

TEST_CASE("theorem check examples") {
    TheoremCheckConfig cfg;
    cfg.anchors = 20;
    cfg.draws = 500;
    cfg.seed = 3;
    cfg.threads = 2;
    const TheoremReport rx = theorem_check({AnsatzFamily::ProductRX, 1, 1}, cfg);
    CHECK(rx.pass);
    CHECK(rx.identity_bit_exact);
    CHECK(std::abs(rx.kernel.total_variance - 0.125) <= 3 * rx.kernel.total_variance_se);

    const TheoremReport id = theorem_check({AnsatzFamily::Identity, 3, 1}, cfg);
    CHECK(id.pass);
    CHECK(id.kernel.total_variance == 0.0);

    cfg.draws = 200;
    const TheoremReport hwe =
        theorem_check({AnsatzFamily::HardwareEfficient, 6, 6, Entanglement::full, 4}, cfg);
    CHECK(hwe.kernel.upper_pass);
    CHECK(hwe.identity_bit_exact);
}

TEST_CASE("lemma inequalities hold for sampled kernels of every family") {
    TheoremCheckConfig cfg;
    cfg.anchors = 10;
    cfg.draws = 100;
    cfg.threads = 2;
    for (const auto family : {AnsatzFamily::HavlicekZZ, AnsatzFamily::PermInvariant,
                              AnsatzFamily::HardwareEfficient, AnsatzFamily::ProductRX}) {
        for (int n = 2; n <= 6; n += 2) {
            cfg.seed = static_cast<std::uint64_t>(n);
            const TheoremReport r = theorem_check({family, n, 2, Entanglement::full, 1}, cfg);
            CHECK(r.kernel.pass());
            CHECK(r.identity_bit_exact);
        }
    }
}

TEST_CASE("theorem check refuses mismatched domains") {
    TheoremCheckConfig cfg;
    cfg.data_domain = {-1.0, 1.0};
    try {
        (void)theorem_check({AnsatzFamily::ProductRX, 1, 1}, cfg);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::distribution_mismatch);
    }
}

}
