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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pdcsim::report {

/// Shortest round-trip-stable text for CSV cells ("%.10g").
std::string num(double v);

/// CSV with a versioned comment line: "# pdcsim <schema> v<version>".
class CsvTable {
   public:
    CsvTable(std::string schema, int version, std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    /// Extra "# key: value" line written after the version line.
    void add_note(std::string note);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

   private:
    std::string schema_;
    int version_;
    std::vector<std::string> columns_;
    std::vector<std::string> notes_;
    std::vector<std::vector<std::string>> rows_;
};

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = true;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
};

/// Static SVG line/marker plot. Non-finite points and, on log axes,
/// non-positive ones are skipped.
std::string render_svg(const PlotSpec &spec);

void write_text(const std::filesystem::path &path, const std::string &content);

}  // namespace pdcsim::report
