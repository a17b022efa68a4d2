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

#include <algorithm>
#include <cstdint>
#include <vector>

#include "helpers.hpp"
#include "qkonc/data.hpp"
#include "qkonc/error.hpp"

using namespace qkonc;
using qkonc::testing::kPi;

namespace {

void put32(std::vector<std::uint8_t> &b, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8)
        b.push_back(static_cast<std::uint8_t>(v >> s));
}

std::vector<std::uint8_t> idx_images(std::uint32_t magic, std::uint32_t count,
                                     const std::vector<std::uint8_t> &pixels) {
    std::vector<std::uint8_t> b;
    put32(b, magic);
    put32(b, count);
    put32(b, 2);
    put32(b, 2);
    b.insert(b.end(), pixels.begin(), pixels.end());
    return b;
}

std::vector<std::uint8_t> idx_labels(const std::vector<std::uint8_t> &labels) {
    std::vector<std::uint8_t> b;
    put32(b, 2049);
    put32(b, static_cast<std::uint32_t>(labels.size()));
    b.insert(b.end(), labels.begin(), labels.end());
    return b;
}

Dataset labelled(std::size_t per_class, int classes) {
    Dataset ds;
    ds.features = Matrix(per_class * static_cast<std::size_t>(classes), 2);
    std::vector<int> labels;
    for (std::size_t i = 0; i < ds.features.rows(); ++i) {
        ds.features(i, 0) = static_cast<double>(i);
        ds.features(i, 1) = static_cast<double>(i % 7);
        labels.push_back(static_cast<int>(i % static_cast<std::size_t>(classes)));
    }
    ds.labels = labels;
    return ds;
}

} // namespace

TEST_SUITE("data") {

TEST_CASE("idx bytes decode to scaled pixels") {
    const auto ds = parse_idx(idx_images(2051, 1, {0, 255, 128, 64}), idx_labels({3}));
    REQUIRE(ds.size() == 1);
    REQUIRE(ds.dims() == 4);
    CHECK(ds.features(0, 0) == 0.0);
    CHECK(ds.features(0, 1) == 1.0);
    CHECK(ds.features(0, 2) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
    CHECK(ds.features(0, 3) == doctest::Approx(64.0 / 255.0).epsilon(1e-15));
    CHECK((*ds.labels)[0] == 3);
}

TEST_CASE("idx errors") {
    try {
        (void)parse_idx(idx_images(2052, 1, {0, 0, 0, 0}), idx_labels({0}));
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::format_error);
    }
    try {
        (void)parse_idx(idx_images(2051, 2, std::vector<std::uint8_t>(8, 1)),
                        idx_labels({0, 1, 2}));
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::count_mismatch);
    }
    const auto truncated = idx_images(2051, 2, {1, 2, 3});
    CHECK_THROWS_AS((void)parse_idx(truncated, idx_labels({0, 1})), Error);
    try {
        (void)load_idx("/nonexistent/images", "/nonexistent/labels");
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::io_error);
    }
}

TEST_CASE("csv round trip with labels") {
    const auto ds = parse_csv("a,label,b\n1.5,0,2\n-1,1,0.25\n");
    REQUIRE(ds.size() == 2);
    REQUIRE(ds.dims() == 2);
    CHECK(ds.features(1, 1) == 0.25);
    CHECK(*ds.labels == std::vector<int>{0, 1});
    const auto back = parse_csv(to_csv(ds));
    CHECK(back.features == ds.features);
    CHECK(back.labels == ds.labels);
    CHECK_THROWS_AS((void)parse_csv("a,b\n1,2,3\n"), Error);
    CHECK_THROWS_AS((void)parse_csv("a\nnope\n"), Error);
}

TEST_CASE("filter binary balances classes") {
    const Dataset ds = labelled(80, 3);
    const Dataset f = filter_binary(ds, 0, 1, 100, 9);
    REQUIRE(f.size() == 100);
    const auto &l = *f.labels;
    CHECK(std::count(l.begin(), l.end(), 0) == 50);
    CHECK(std::count(l.begin(), l.end(), 1) == 50);
    const Dataset one = filter_binary(ds, 0, 1, 1, 9);
    CHECK((*one.labels)[0] == 0);
    CHECK_THROWS_AS((void)filter_binary(ds, 0, 5, 10, 9), Error);
    CHECK(filter_binary(ds, 0, 1, 100, 9).features == f.features);
}

TEST_CASE("pca on axis aligned data is a signed permutation") {
    Dataset ds;
    ds.features = Matrix::from_rows({{1, 0}, {-1, 0}, {0, 10}, {0, -10}});
    const PcaModel m = pca_fit(ds, 2);
    CHECK(std::abs(std::abs(m.components(1, 0)) - 1.0) <= 1e-12);
    CHECK(std::abs(std::abs(m.components(0, 1)) - 1.0) <= 1e-12);
    CHECK(m.components(1, 0) > 0);
    const Matrix p = m.project(ds.features);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(std::abs(p(i, 0)) - std::abs(ds.features(i, 1))) <= 1e-10);
}

TEST_CASE("pca on a line") {
    Dataset ds;
    ds.features = Matrix::from_rows({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    const PcaModel m = pca_fit(ds, 1);
    REQUIRE(m.eigenvalues.size() == 2);
    CHECK(m.eigenvalues[0] == doctest::Approx(2.0 * 5.0 / 3.0));
    CHECK(m.components(0, 0) == doctest::Approx(std::sqrt(0.5)));
    CHECK_THROWS_AS((void)pca_fit(ds, 2), Error);
    CHECK(std::abs(m.eigenvalues[1]) <= 1e-10);
}

TEST_CASE("pca with k = d reconstructs") {
    Rng rng = make_stream(61, 0);
    Dataset ds;
    ds.features = Matrix(30, 4);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            ds.features(i, j) = uniform(rng, -1, 1) * static_cast<double>(j + 1);
    const PcaModel m = pca_fit(ds, 4);
    const Matrix r = m.reconstruct(m.project(ds.features));
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(r(i, j) - (ds.features(i, j) - m.mean[j])) <= 1e-9);
    CHECK(std::is_sorted(m.eigenvalues.rbegin(), m.eigenvalues.rend()));
    CHECK(m.eigenvalues.back() >= -1e-10);
}

TEST_CASE("pca with fewer points than dimensions") {
    Rng rng = make_stream(62, 0);
    Dataset ds;
    ds.features = Matrix(5, 40);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 40; ++j)
            ds.features(i, j) = uniform(rng, 0, 1);
    const Dataset r = pca_reduce(ds, 3);
    CHECK(r.dims() == 3);
    CHECK(r.provenance.back()["op"] == "pca_reduce");
    Dataset flat;
    flat.features = Matrix(3, 4, 1.0);
    try {
        (void)pca_fit(flat, 1);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::degenerate_data);
    }
}

TEST_CASE("normalize range") {
    Dataset ds;
    ds.features = Matrix::from_rows({{0, 5, 0}, {1, 5, 0.5}, {1, 5, 1}});
    const Dataset n = normalize_range(ds);
    CHECK(n.features(0, 0) == doctest::Approx(-kPi));
    CHECK(n.features(1, 0) == doctest::Approx(kPi));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(n.features(i, 1) == 0.0);
    CHECK(n.features(1, 2) == doctest::Approx(0.0));
    CHECK(n.features(2, 2) == doctest::Approx(kPi));
    const Dataset twice = normalize_range(n);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(twice.features(i, j) - n.features(i, j)) <= 1e-12);
}

TEST_CASE("synthetic uniform") {
    const Dataset a = synthetic_uniform(10000, 3, 4);
    CHECK(a.features == synthetic_uniform(10000, 3, 4).features);
    for (std::size_t j = 0; j < 3; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a.features(i, j)) <= kPi);
            mean += a.features(i, j);
        }
        mean /= static_cast<double>(a.size());
        CHECK(std::abs(mean) <= 3 * kPi / std::sqrt(3.0 * 10000));
    }
}

TEST_CASE("pipeline is reproducible") {
    const Dataset ds = labelled(60, 2);
    const auto run = [&] {
        return normalize_range(pca_reduce(filter_binary(ds, 0, 1, 40, 5), 2));
    };
    const Dataset a = run();
    const Dataset b = run();
    CHECK(a.features == b.features);
    CHECK(a.provenance == b.provenance);
    CHECK(a.provenance.size() == 3);
}

}
