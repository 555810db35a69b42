// Copyright 2026 The boostfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "boostfreq/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "boostfreq/error.hpp"
#include "boostfreq/text_format.hpp"

namespace boostfreq {
namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

struct Rgb {
  double r, g, b;
};

Rgb mix(Rgb a, Rgb b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c.r)),
                static_cast<int>(std::lround(c.g)), static_cast<int>(std::lround(c.b)));
  return buf;
}

constexpr Rgb kPale{247, 251, 255};
constexpr Rgb kBlue{8, 48, 107};
constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kRed{165, 15, 21};
const char* const kMissing = "#cccccc";

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Shared layout: rows are MFW counts (top = smallest), columns backgrounds.
template <typename ColorFn>
std::string render_svg(const std::string& title, const std::string& legend,
                       const std::vector<std::size_t>& rows, const std::vector<double>& cols,
                       const std::vector<double>& values, ColorFn color) {
  const int cell_w = 44, cell_h = 22, left = 70, top = 50;
  const int width = left + cell_w * static_cast<int>(cols.size()) + 20;
  const int height = top + cell_h * static_cast<int>(rows.size()) + 60;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- " << legend << " -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  svg << "<text x=\"" << left << "\" y=\"20\" font-size=\"13\">" << xml_escape(title) << "</text>\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int y = top + cell_h * static_cast<int>(i);
    svg << "<text x=\"" << left - 6 << "\" y=\"" << y + 15 << "\" text-anchor=\"end\">" << rows[i]
        << "</text>\n";
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const int x = left + cell_w * static_cast<int>(j);
      const double v = values[i * cols.size() + j];
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w << "\" height=\"" << cell_h
          << "\" fill=\"" << color(v) << "\"><title>mfw " << rows[i] << ", background "
          << format_double(cols[j]) << ": " << fixed(v, 4) << "</title></rect>\n";
      svg << "<text x=\"" << x + cell_w / 2 << "\" y=\"" << y + 15 << "\" text-anchor=\"middle\">"
          << fixed(v, 3) << "</text>\n";
    }
  }
  const int axis_y = top + cell_h * static_cast<int>(rows.size()) + 16;
  for (std::size_t j = 0; j < cols.size(); ++j)
    svg << "<text x=\"" << left + cell_w * static_cast<int>(j) + cell_w / 2 << "\" y=\"" << axis_y
        << "\" text-anchor=\"middle\">" << format_double(cols[j]) << "</text>\n";
  svg << "<text x=\"" << left << "\" y=\"" << axis_y + 20 << "\">background (x) by MFW (y)</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void write_results_csv(std::span<const ResultGrid> grids, std::ostream& out) {
  out << "measure,mode,mfw,background,f1,baseline_f1,gain\n";
  for (const auto& g : grids) {
    for (std::size_t i = 0; i < g.axis_mfw.size(); ++i) {
      const auto& base = g.baseline.at(i);
      const double baseline = base.failed() ? std::nan("") : base.f1;
      for (std::size_t j = 0; j < g.axis_background.size(); ++j) {
        const auto& c = g.cell(i, j);
        const double f1 = c.failed() ? std::nan("") : c.f1;
        out << to_string(g.measure) << ',' << to_string(g.mode) << ',' << g.axis_mfw[i] << ','
            << format_double(g.axis_background[j]) << ',' << format_double(f1) << ','
            << format_double(baseline) << ',' << format_double(f1 - baseline) << '\n';
      }
    }
  }
}

void write_results_csv(std::span<const ResultGrid> grids, const fs::path& path) {
  auto out = open_output(path);
  write_results_csv(grids, out);
  if (!out) throw DataError("error while writing " + path.string());
}

std::vector<ResultGrid> read_results_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read results: " + path.string());
  std::string line;
  std::getline(in, line);

  struct Row {
    DistanceMeasure measure;
    BackgroundMode mode;
    std::size_t mfw;
    double background, f1, baseline;
  };
  std::vector<Row> rows;
  std::size_t line_no = 1;
  auto value = [&](const std::string& s) {
    if (s == "NA") return std::nan("");
    auto v = parse_double(s);
    if (!v) throw DataError(path.string() + ":" + std::to_string(line_no) + ": invalid number '" + s + "'");
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_commas(line);
    if (cells.size() != 7) throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected 7 columns");
    double mfw = value(cells[2]);
    if (!(mfw >= 1) || std::floor(mfw) != mfw)
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": invalid MFW count");
    rows.push_back({parse_measure(cells[0]), parse_background_mode(cells[1]), static_cast<std::size_t>(mfw),
                    value(cells[3]), value(cells[4]), value(cells[5])});
  }

  std::vector<ResultGrid> grids;
  auto find_or_add = [](auto& v, const auto& x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it != v.end()) return static_cast<std::size_t>(it - v.begin());
    v.push_back(x);
    return v.size() - 1;
  };
  for (const auto& r : rows) {
    auto g = std::find_if(grids.begin(), grids.end(),
                          [&](const ResultGrid& x) { return x.measure == r.measure && x.mode == r.mode; });
    if (g == grids.end()) {
      grids.push_back({});
      g = grids.end() - 1;
      g->measure = r.measure;
      g->mode = r.mode;
    }
    find_or_add(g->axis_mfw, r.mfw);
    find_or_add(g->axis_background, r.background);
  }
  for (auto& g : grids) {
    g.cells.assign(g.axis_mfw.size() * g.axis_background.size(), GridCell{std::nan(""), "missing"});
    g.baseline.assign(g.axis_mfw.size(), GridCell{std::nan(""), "missing"});
  }
  for (const auto& r : rows) {
    auto& g = *std::find_if(grids.begin(), grids.end(),
                            [&](const ResultGrid& x) { return x.measure == r.measure && x.mode == r.mode; });
    auto i = static_cast<std::size_t>(std::find(g.axis_mfw.begin(), g.axis_mfw.end(), r.mfw) - g.axis_mfw.begin());
    auto j = static_cast<std::size_t>(
        std::find(g.axis_background.begin(), g.axis_background.end(), r.background) - g.axis_background.begin());
    g.cell(i, j) = std::isnan(r.f1) ? GridCell{r.f1, "failed"} : GridCell{r.f1, ""};
    g.baseline[i] = std::isnan(r.baseline) ? GridCell{r.baseline, "failed"} : GridCell{r.baseline, ""};
  }
  return grids;
}

void write_gain_csv(std::span<const GainMap> maps, std::ostream& out) {
  out << "measure,mode,mfw,background,gain\n";
  for (const auto& m : maps)
    for (std::size_t i = 0; i < m.axis_mfw.size(); ++i)
      for (std::size_t j = 0; j < m.axis_background.size(); ++j)
        out << to_string(m.measure) << ',' << to_string(m.mode) << ',' << m.axis_mfw[i] << ','
            << format_double(m.axis_background[j]) << ',' << format_double(m.at(i, j)) << '\n';
}

void write_gain_csv(std::span<const GainMap> maps, const fs::path& path) {
  auto out = open_output(path);
  write_gain_csv(maps, out);
  if (!out) throw DataError("error while writing " + path.string());
}

std::string render_heatmap_svg(const ResultGrid& grid) {
  std::vector<double> values;
  for (const auto& c : grid.cells) values.push_back(c.failed() ? std::nan("") : c.f1);
  double lo = 1.0, hi = 0.0;
  for (double v : values)
    if (!std::isnan(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  if (hi < lo) lo = hi = 0.0;
  const std::string legend =
      "F1 per cell. Color: linear from " + hex(kPale) + " at the grid minimum (" + fixed(lo, 4) +
      ") to " + hex(kBlue) + " at the grid maximum (" + fixed(hi, 4) + "); " + kMissing +
      " marks failed cells.";
  auto color = [&](double v) -> std::string {
    if (std::isnan(v)) return kMissing;
    double t = hi > lo ? (v - lo) / (hi - lo) : 1.0;
    return hex(mix(kPale, kBlue, t));
  };
  std::string title = std::string(to_string(grid.measure)) + " F1 (" + std::string(to_string(grid.mode)) + ")";
  return render_svg(title, legend, grid.axis_mfw, grid.axis_background, values, color);
}

std::string render_gain_svg(const GainMap& map) {
  double span = 0.0;
  for (double v : map.gains)
    if (!std::isnan(v)) span = std::max(span, std::abs(v));
  const std::string legend =
      "F1 gain over baseline per cell. Color: diverging, " + hex(kRed) + " at -" + fixed(span, 4) +
      ", " + hex(kWhite) + " at 0, " + hex(kBlue) + " at +" + fixed(span, 4) +
      " (linear on each side); " + kMissing + " marks failed cells.";
  auto color = [&](double v) -> std::string {
    if (std::isnan(v)) return kMissing;
    if (span == 0.0) return hex(kWhite);
    double t = std::clamp(v / span, -1.0, 1.0);
    return hex(t < 0 ? mix(kWhite, kRed, -t) : mix(kWhite, kBlue, t));
  };
  std::string title = std::string(to_string(map.measure)) + " gain over baseline (" +
                      std::string(to_string(map.mode)) + ")";
  return render_svg(title, legend, map.axis_mfw, map.axis_background, map.gains, color);
}

BestScores best_scores(const ResultGrid& grid) {
  BestScores best;
  best.measure = grid.measure;
  best.baseline_f1 = best.enhanced_f1 = std::nan("");
  for (std::size_t i = 0; i < grid.axis_mfw.size(); ++i) {
    const auto& b = grid.baseline[i];
    if (!b.failed() && (std::isnan(best.baseline_f1) || b.f1 > best.baseline_f1)) {
      best.baseline_f1 = b.f1;
      best.baseline_mfw = grid.axis_mfw[i];
    }
    for (std::size_t j = 0; j < grid.axis_background.size(); ++j) {
      const auto& c = grid.cell(i, j);
      if (!c.failed() && (std::isnan(best.enhanced_f1) || c.f1 > best.enhanced_f1)) {
        best.enhanced_f1 = c.f1;
        best.enhanced_mfw = grid.axis_mfw[i];
        best.enhanced_background = grid.axis_background[j];
      }
    }
  }
  return best;
}

void write_summary_csv(std::span<const ResultGrid> grids, std::ostream& out) {
  out << "measure,mode,baseline_f1,baseline_mfw,enhanced_f1,enhanced_mfw,background,gain\n";
  for (const auto& g : grids) {
    auto b = best_scores(g);
    out << to_string(b.measure) << ',' << to_string(g.mode) << ',' << format_double(b.baseline_f1) << ','
        << b.baseline_mfw << ',' << format_double(b.enhanced_f1) << ',' << b.enhanced_mfw << ','
        << format_double(b.enhanced_background) << ',' << format_double(b.enhanced_f1 - b.baseline_f1)
        << '\n';
  }
}

}  // namespace boostfreq
