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

#include "qkonc/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qkonc/eigen.hpp"
#include "qkonc/error.hpp"
#include "qkonc/rng.hpp"

namespace qkonc {

using nlohmann::json;

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::vector<std::uint8_t> read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::io_error, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in),
            std::istreambuf_iterator<char>()};
}

class ByteReader {
  public:
    ByteReader(std::span<const std::uint8_t> bytes, const char *what)
        : bytes_(bytes), what_(what) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v = (v << 8U) | bytes_[pos_++];
        }
        return v;
    }

    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

  private:
    void need(std::size_t n) const {
        require(bytes_.size() - pos_ >= n, Errc::format_error,
                std::string("truncated IDX ") + what_ + " payload");
    }

    std::span<const std::uint8_t> bytes_;
    const char *what_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_double(const std::string &text, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        require(used == text.size(), Errc::format_error, "");
        return v;
    } catch (const std::exception &) {
        throw Error(Errc::format_error, "line " + std::to_string(line) +
                                            ": '" + text + "' is not a number");
    }
}

} // namespace

Dataset parse_idx(std::span<const std::uint8_t> images,
                  std::span<const std::uint8_t> labels) {
    ByteReader img(images, "images");
    const std::uint32_t magic = img.u32();
    require(magic == kImageMagic, Errc::format_error,
            "images magic is " + std::to_string(magic) + ", expected 2051");
    const std::uint32_t count = img.u32();
    const std::uint32_t rows = img.u32();
    const std::uint32_t cols = img.u32();
    const std::size_t pixels = std::size_t{rows} * cols;
    const auto payload = img.take(std::size_t{count} * pixels);

    ByteReader lab(labels, "labels");
    const std::uint32_t lmagic = lab.u32();
    require(lmagic == kLabelMagic, Errc::format_error,
            "labels magic is " + std::to_string(lmagic) + ", expected 2049");
    const std::uint32_t lcount = lab.u32();
    require(lcount == count, Errc::count_mismatch,
            std::to_string(count) + " images but " + std::to_string(lcount) +
                " labels");
    const auto lpayload = lab.take(lcount);

    Dataset ds;
    ds.features = Matrix(count, pixels);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t p = 0; p < pixels; ++p) {
            ds.features(i, p) = payload[i * pixels + p] / 255.0;
        }
    }
    ds.labels = std::vector<int>(lpayload.begin(), lpayload.end());
    return ds;
}

Dataset load_idx(const std::string &images_path,
                 const std::string &labels_path) {
    const auto images = read_file(images_path);
    const auto labels = read_file(labels_path);
    Dataset ds = parse_idx(images, labels);
    ds.provenance.push_back(json{{"op", "load_idx"},
                                 {"images", images_path},
                                 {"labels", labels_path},
                                 {"n_points", ds.size()},
                                 {"dims", ds.dims()}});
    return ds;
}

Dataset parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split(line);
        }
    }
    require(!header.empty(), Errc::format_error, "CSV has no header row");
    const auto label_it = std::find(header.begin(), header.end(), "label");
    const bool has_label = label_it != header.end();
    const auto label_col =
        static_cast<std::size_t>(std::distance(header.begin(), label_it));
    const std::size_t n_features = header.size() - (has_label ? 1 : 0);

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line);
        require(fields.size() == header.size(), Errc::format_error,
                "line " + std::to_string(line_no) + " has " +
                    std::to_string(fields.size()) + " fields, header has " +
                    std::to_string(header.size()));
        std::vector<double> row;
        row.reserve(n_features);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (has_label && c == label_col) {
                const double v = parse_double(fields[c], line_no);
                require(v == std::floor(v), Errc::format_error,
                        "line " + std::to_string(line_no) +
                            ": label must be an integer");
                labels.push_back(static_cast<int>(v));
            } else {
                row.push_back(parse_double(fields[c], line_no));
            }
        }
        rows.push_back(std::move(row));
    }
    Dataset ds;
    ds.features = rows.empty() ? Matrix(0, n_features) : Matrix::from_rows(rows);
    if (has_label) {
        ds.labels = std::move(labels);
    }
    return ds;
}

Dataset load_csv(const std::string &path) {
    const auto bytes = read_file(path);
    Dataset ds = parse_csv(std::string(bytes.begin(), bytes.end()));
    ds.provenance.push_back(json{{"op", "load_csv"},
                                 {"path", path},
                                 {"n_points", ds.size()},
                                 {"dims", ds.dims()}});
    return ds;
}

std::string to_csv(const Dataset &dataset) {
    std::ostringstream out;
    out << std::setprecision(17);
    for (std::size_t c = 0; c < dataset.dims(); ++c) {
        out << (c == 0 ? "" : ",") << "x" << c;
    }
    if (dataset.labels) {
        out << (dataset.dims() == 0 ? "" : ",") << "label";
    }
    out << '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (std::size_t c = 0; c < dataset.dims(); ++c) {
            out << (c == 0 ? "" : ",") << dataset.features(i, c);
        }
        if (dataset.labels) {
            out << (dataset.dims() == 0 ? "" : ",") << (*dataset.labels)[i];
        }
        out << '\n';
    }
    return out.str();
}

Dataset filter_binary(const Dataset &dataset, int class_a, int class_b,
                      std::size_t n_points, std::uint64_t seed) {
    require(dataset.labels.has_value(), Errc::invalid_argument,
            "class filtering needs labels");
    require(class_a != class_b, Errc::invalid_argument,
            "the two classes must differ");
    const auto &labels = *dataset.labels;
    require(labels.size() == dataset.size(), Errc::count_mismatch,
            "label count differs from point count");

    const std::size_t want_a = (n_points + 1) / 2;
    const std::size_t want_b = n_points / 2;
    std::vector<std::size_t> picked;
    const std::pair<int, std::size_t> plan[] = {{class_a, want_a},
                                                {class_b, want_b}};
    for (std::size_t c = 0; c < 2; ++c) {
        const auto [label, want] = plan[c];
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) {
                members.push_back(i);
            }
        }
        require(!members.empty(), Errc::insufficient_samples,
                "class " + std::to_string(label) + " is absent");
        require(members.size() >= want, Errc::insufficient_samples,
                "class " + std::to_string(label) + " has " +
                    std::to_string(members.size()) + " points, " +
                    std::to_string(want) + " requested");
        // Partial Fisher-Yates; the first `want` slots are the sample.
        Rng rng = make_stream(seed, c);
        for (std::size_t k = 0; k < want; ++k) {
            const std::size_t r = k + uniform_index(rng, members.size() - k);
            std::swap(members[k], members[r]);
            picked.push_back(members[k]);
        }
    }

    Dataset out;
    out.features = Matrix(picked.size(), dataset.dims());
    out.labels = std::vector<int>();
    for (std::size_t r = 0; r < picked.size(); ++r) {
        const auto src = dataset.features.row(picked[r]);
        std::copy(src.begin(), src.end(), out.features.row(r).begin());
        out.labels->push_back(labels[picked[r]]);
    }
    out.provenance = dataset.provenance;
    out.provenance.push_back(json{{"op", "filter_binary"},
                                  {"classes", {class_a, class_b}},
                                  {"n_points", n_points},
                                  {"seed", seed}});
    return out;
}

Matrix PcaModel::project(const Matrix &features) const {
    require(features.cols() == mean.size(), Errc::dimension_mismatch,
            "projection input has the wrong dimension");
    Matrix centered = features;
    for (std::size_t i = 0; i < centered.rows(); ++i) {
        for (std::size_t c = 0; c < centered.cols(); ++c) {
            centered(i, c) -= mean[c];
        }
    }
    return multiply(centered, components);
}

Matrix PcaModel::reconstruct(const Matrix &projected) const {
    require(projected.cols() == components.cols(), Errc::dimension_mismatch,
            "reconstruction input has the wrong dimension");
    return multiply(projected, components.transposed());
}

PcaModel pca_fit(const Dataset &dataset, std::size_t k) {
    const std::size_t n = dataset.size();
    const std::size_t d = dataset.dims();
    require(n >= 2, Errc::insufficient_samples, "PCA needs at least 2 points");
    require(k >= 1 && k <= std::min(n, d), Errc::invalid_argument,
            "PCA target dimension " + std::to_string(k) +
                " exceeds min(N, d) = " + std::to_string(std::min(n, d)));

    PcaModel model;
    model.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) {
            model.mean[c] += dataset.features(i, c);
        }
    }
    for (double &m : model.mean) {
        m /= static_cast<double>(n);
    }
    Matrix centered = dataset.features;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) {
            centered(i, c) -= model.mean[c];
        }
    }
    const double norm = 1.0 / static_cast<double>(n - 1);

    model.components = Matrix(d, k);
    if (d <= n) {
        Matrix cov = multiply(centered.transposed(), centered);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                cov(i, j) *= norm;
            }
        }
        const EigenDecomposition eig = jacobi_eigen(cov);
        model.eigenvalues = eig.values;
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t i = 0; i < d; ++i) {
                model.components(i, c) = eig.vectors(i, c);
            }
        }
    } else {
        // X^T X / (N-1) and X X^T / (N-1) share their nonzero spectrum; a
        // covariance eigenvector is X^T u normalized.
        Matrix g = multiply(centered, centered.transposed());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                g(i, j) *= norm;
            }
        }
        const EigenDecomposition eig = jacobi_eigen(g);
        model.eigenvalues = eig.values;
        for (std::size_t c = 0; c < k; ++c) {
            double len = 0.0;
            for (std::size_t f = 0; f < d; ++f) {
                double v = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    v += centered(i, f) * eig.vectors(i, c);
                }
                model.components(f, c) = v;
                len += v * v;
            }
            len = std::sqrt(len);
            if (len > 0.0) {
                for (std::size_t f = 0; f < d; ++f) {
                    model.components(f, c) /= len;
                }
            }
        }
    }

    const double top = std::max(model.eigenvalues.front(), 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        require(model.eigenvalues[c] > 1e-12 * std::max(top, 1e-300),
                Errc::degenerate_data,
                "principal direction " + std::to_string(c) +
                    " has zero variance (eigenvalue " +
                    std::to_string(model.eigenvalues[c]) + ")");
        std::size_t arg = 0;
        for (std::size_t f = 1; f < d; ++f) {
            if (std::abs(model.components(f, c)) >
                std::abs(model.components(arg, c))) {
                arg = f;
            }
        }
        if (model.components(arg, c) < 0.0) {
            for (std::size_t f = 0; f < d; ++f) {
                model.components(f, c) = -model.components(f, c);
            }
        }
    }
    return model;
}

Dataset pca_reduce(const Dataset &dataset, std::size_t k) {
    const PcaModel model = pca_fit(dataset, k);
    Dataset out;
    out.features = model.project(dataset.features);
    out.labels = dataset.labels;
    out.provenance = dataset.provenance;
    out.provenance.push_back(json{{"op", "pca_reduce"},
                                  {"k", k},
                                  {"fitted_on_points", dataset.size()}});
    return out;
}

Dataset normalize_range(const Dataset &dataset) {
    constexpr double pi = std::numbers::pi;
    require(dataset.size() >= 1, Errc::invalid_argument,
            "cannot normalize an empty dataset");
    Dataset out = dataset;
    for (std::size_t c = 0; c < dataset.dims(); ++c) {
        double lo = dataset.features(0, c);
        double hi = lo;
        for (std::size_t i = 1; i < dataset.size(); ++i) {
            lo = std::min(lo, dataset.features(i, c));
            hi = std::max(hi, dataset.features(i, c));
        }
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            double &v = out.features(i, c);
            if (hi == lo) {
                v = 0.0;
            } else {
                v = std::clamp(-pi + (v - lo) * (2.0 * pi) / (hi - lo), -pi,
                               pi);
            }
        }
    }
    out.provenance.push_back(json{{"op", "normalize_range"},
                                  {"range", {-pi, pi}}});
    return out;
}

Dataset synthetic_uniform(std::size_t n_points, std::size_t d,
                          std::uint64_t seed) {
    require(n_points >= 1, Errc::invalid_argument,
            "synthetic dataset needs >= 1 point");
    constexpr double pi = std::numbers::pi;
    Dataset ds;
    ds.features = Matrix(n_points, d);
    for (std::size_t i = 0; i < n_points; ++i) {
        Rng rng = make_stream(seed, i);
        for (double &v : ds.features.row(i)) {
            v = uniform(rng, -pi, pi);
        }
    }
    ds.provenance.push_back(json{{"op", "synthetic_uniform"},
                                 {"n_points", n_points},
                                 {"dims", d},
                                 {"range", {-pi, pi}},
                                 {"seed", seed}});
    return ds;
}

} // namespace qkonc
