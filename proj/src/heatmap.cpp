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

#include "qkonc/heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qkonc {

namespace {

constexpr std::array<std::array<int, 3>, 8> kRamp{{
    {0x44, 0x01, 0x54},
    {0x46, 0x32, 0x7e},
    {0x36, 0x5c, 0x8d},
    {0x27, 0x7f, 0x8e},
    {0x1f, 0xa1, 0x87},
    {0x4a, 0xc1, 0x6d},
    {0xa0, 0xda, 0x39},
    {0xfd, 0xe7, 0x25},
}};

std::string escape(const std::string &text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

} // namespace

std::string heat_color(double value) {
    const double v = std::isfinite(value) ? std::clamp(value, 0.0, 1.0) : 0.0;
    const double pos = v * static_cast<double>(kRamp.size() - 1);
    const auto lo = std::min(static_cast<std::size_t>(pos), kRamp.size() - 2);
    const double frac = pos - static_cast<double>(lo);
    char buf[8];
    int rgb[3];
    for (int c = 0; c < 3; ++c) {
        const double a = kRamp[lo][static_cast<std::size_t>(c)];
        const double b = kRamp[lo + 1][static_cast<std::size_t>(c)];
        rgb[c] = static_cast<int>(std::lround(a + (b - a) * frac));
    }
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

std::string render_heatmap_svg(const Matrix &values, const std::string &title) {
    const std::size_t rows = values.rows();
    const std::size_t cols = values.cols();
    const std::size_t longest = std::max<std::size_t>({rows, cols, 1});
    const std::size_t cell = std::max<std::size_t>(2, 400 / longest);
    const std::size_t margin = 30;
    const std::size_t bar = 16;
    const std::size_t width = margin * 2 + cols * cell + bar + 40;
    const std::size_t height = margin * 2 + rows * cell;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\" shape-rendering=\"crispEdges\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"" << margin << "\" y=\"" << margin - 10
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(title)
        << "</text>\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            svg << "<rect x=\"" << margin + j * cell << "\" y=\""
                << margin + i * cell << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\""
                << heat_color(values(i, j)) << "\"/>\n";
        }
    }
    // Color bar: eight bands, 1 at the top.
    const std::size_t bar_x = margin * 2 + cols * cell - margin / 2;
    const std::size_t band = std::max<std::size_t>(1, rows * cell / kRamp.size());
    for (std::size_t b = 0; b < kRamp.size(); ++b) {
        const double level =
            1.0 - static_cast<double>(b) / static_cast<double>(kRamp.size() - 1);
        svg << "<rect x=\"" << bar_x << "\" y=\"" << margin + b * band
            << "\" width=\"" << bar << "\" height=\"" << band << "\" fill=\""
            << heat_color(level) << "\"/>\n";
    }
    svg << "<text x=\"" << bar_x + bar + 4 << "\" y=\"" << margin + 10
        << "\" font-family=\"sans-serif\" font-size=\"10\">1</text>\n";
    svg << "<text x=\"" << bar_x + bar + 4 << "\" y=\""
        << margin + kRamp.size() * band
        << "\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace qkonc
