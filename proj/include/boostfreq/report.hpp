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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "boostfreq/evaluate.hpp"

namespace boostfreq {

// Long format, one line per cell:
//   measure,mode,mfw,background,f1,baseline_f1,gain
// Failed cells carry NA in f1 and gain.
void write_results_csv(std::span<const ResultGrid> grids, std::ostream& out);
void write_results_csv(std::span<const ResultGrid> grids, const std::filesystem::path& path);
std::vector<ResultGrid> read_results_csv(const std::filesystem::path& path);

// measure,mode,mfw,background,gain
void write_gain_csv(std::span<const GainMap> maps, std::ostream& out);
void write_gain_csv(std::span<const GainMap> maps, const std::filesystem::path& path);

std::string render_heatmap_svg(const ResultGrid& grid);
std::string render_gain_svg(const GainMap& map);

/// Best baseline and best enhanced cell of one grid.
struct BestScores {
  DistanceMeasure measure = DistanceMeasure::cosine_delta;
  double baseline_f1 = 0.0;
  std::size_t baseline_mfw = 0;
  double enhanced_f1 = 0.0;
  std::size_t enhanced_mfw = 0;
  double enhanced_background = 0.0;
};

/// Ties keep the first cell in MFW-major order.
BestScores best_scores(const ResultGrid& grid);

// measure,mode,baseline_f1,baseline_mfw,enhanced_f1,enhanced_mfw,background,gain
void write_summary_csv(std::span<const ResultGrid> grids, std::ostream& out);

}  // namespace boostfreq
