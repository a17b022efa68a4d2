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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qkonc {

/// Dense row-major real matrix. Used for Gram matrices, datasets and the
/// eigensolver; sizes here stay in the hundreds, so no BLAS.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<double>> &rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    double &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] std::span<const double> data() const noexcept {
        return data_;
    }

    [[nodiscard]] Matrix transposed() const;

    // Largest |A(i,j) - A(j,i)|; zero for non-square matrices is not
    // meaningful, so callers check squareness first.
    [[nodiscard]] double asymmetry() const;

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix &a, const Matrix &b);

} // namespace qkonc
