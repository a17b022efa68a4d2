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

#include "qkonc/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qkonc/error.hpp"

namespace qkonc {

namespace {

double off_diagonal_norm(const Matrix &a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                sum += a(i, j) * a(i, j);
            }
        }
    }
    return std::sqrt(sum);
}

double frobenius(const Matrix &a) {
    double sum = 0.0;
    for (const double v : a.data()) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

} // namespace

EigenDecomposition jacobi_eigen(const Matrix &symmetric, double tolerance,
                                int max_sweeps) {
    require(symmetric.rows() == symmetric.cols(), Errc::dimension_mismatch,
            "eigensolver needs a square matrix");
    const std::size_t n = symmetric.rows();
    require(n >= 1, Errc::invalid_argument, "empty matrix");
    const double asym = symmetric.asymmetry();
    require(asym <= 1e-9, Errc::asymmetric_input,
            "matrix asymmetric by " + std::to_string(asym));

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = 0.5 * (symmetric(i, j) + symmetric(j, i));
        }
    }
    Matrix v = Matrix::identity(n);
    const double threshold = tolerance * std::max(1.0, frobenius(a));

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double phi = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (phi >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(phi) + std::sqrt(phi * phi + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    require(off_diagonal_norm(a) <= threshold, Errc::invalid_argument,
            "Jacobi iteration did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                         return a(x, x) > a(y, y);
                     });
    EigenDecomposition out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

} // namespace qkonc
