// Copyright 2026 The pdcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdcsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "pdcsim/errors.hpp"

namespace pdcsim::report {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char *const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
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

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Axis {
    double lo;
    double hi;
    bool log;

    double map(double v, double a, double b) const {
        const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return a + t * (b - a);
    }

    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) {
                t.push_back(std::pow(10.0, e));
            }
            return t;
        }
        const double span = hi - lo;
        double step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
        if (span / step > 10) {
            step *= 2;
        }
        if (span / step > 10) {
            step *= 2.5;
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
            t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
        }
        return t;
    }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

Axis make_axis(const std::vector<const std::vector<double> *> &data, bool log) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto *v : data) {
        for (double x : *v) {
            if (usable(x, log)) {
                double y = log ? std::log10(x) : x;
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        double pad = log ? 0.5 : std::max(1e-9, std::abs(lo) * 0.1 + 1e-9);
        lo -= pad;
        hi += pad;
    } else if (!log) {
        double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    } else {
        lo = std::floor(lo);
        hi = std::ceil(hi);
        if (hi - lo < 1.0) {
            hi = lo + 1.0;
        }
    }
    return {lo, hi, log};
}

}  // namespace

std::string num(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

CsvTable::CsvTable(std::string schema, int version, std::vector<std::string> columns)
    : schema_(std::move(schema)), version_(version), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw ContractError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(cells));
}

void CsvTable::add_note(std::string note) { notes_.push_back(std::move(note)); }

std::string CsvTable::str() const {
    std::string s = "# pdcsim " + schema_ + " v" + std::to_string(version_) + "\n";
    for (const auto &n : notes_) {
        s += "# " + n + "\n";
    }
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                s += ',';
            }
            s += cells[i];
        }
        s += '\n';
    };
    line(columns_);
    for (const auto &r : rows_) {
        line(r);
    }
    return s;
}

std::string render_svg(const PlotSpec &spec) {
    std::vector<const std::vector<double> *> xs;
    std::vector<const std::vector<double> *> ys;
    for (const auto &s : spec.series) {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    const Axis ax = make_axis(xs, spec.log_x);
    const Axis ay = make_axis(ys, spec.log_y);
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    const double y1 = kTop;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fixed((x0 + x1) / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
    o << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y1) << "\" width=\"" << fixed(x1 - x0) << "\" height=\""
      << fixed(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        double px = ax.map(t, x0, x1);
        o << "<line x1=\"" << fixed(px) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(px) << "\" y2=\""
          << fixed(y0 + 5) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << fixed(px) << "\" y=\"" << fixed(y0 + 18) << "\" text-anchor=\"middle\">" << num(t)
          << "</text>\n";
    }
    for (double t : ay.ticks()) {
        double py = ay.map(t, y0, y1);
        o << "<line x1=\"" << fixed(x0 - 5) << "\" y1=\"" << fixed(py) << "\" x2=\"" << fixed(x0) << "\" y2=\""
          << fixed(py) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << fixed(x0 - 8) << "\" y=\"" << fixed(py + 4) << "\" text-anchor=\"end\">" << num(t)
          << "</text>\n";
    }
    o << "<text x=\"" << fixed((x0 + x1) / 2) << "\" y=\"" << fixed(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << fixed((y0 + y1) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y_label) << "</text>\n";
    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const Series &s = spec.series[k];
        const char *color = kColors[k % (sizeof kColors / sizeof *kColors)];
        std::string pts;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], ax.log) || !usable(s.y[i], ay.log)) {
                continue;
            }
            const double px = ax.map(s.x[i], x0, x1);
            const double py = ay.map(s.y[i], y0, y1);
            pts += fixed(px) + "," + fixed(py) + " ";
            if (s.markers) {
                o << "<circle cx=\"" << fixed(px) << "\" cy=\"" << fixed(py) << "\" r=\"2.5\" fill=\"" << color
                  << "\"/>";
            }
        }
        if (!pts.empty()) {
            o << "\n<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << pts << "\"/>\n";
        }
        const double ly = y1 + 16 + 18 * static_cast<double>(k);
        o << "<line x1=\"" << fixed(x1 + 12) << "\" y1=\"" << fixed(ly - 4) << "\" x2=\"" << fixed(x1 + 32)
          << "\" y2=\"" << fixed(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
        o << "<text x=\"" << fixed(x1 + 38) << "\" y=\"" << fixed(ly) << "\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_text(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace pdcsim::report
