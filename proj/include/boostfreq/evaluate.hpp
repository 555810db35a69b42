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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "boostfreq/classify.hpp"
#include "boostfreq/corpus.hpp"
#include "boostfreq/frequencies.hpp"
#include "boostfreq/semantics.hpp"

namespace boostfreq {

struct LabeledDoc {
  std::string id;
  std::string author;
};

std::vector<LabeledDoc> labels_of(std::span<const Document> documents);

enum class FoldMode {
  // Fold k trains on the k-th document (by id) of every class. Needs
  // balanced classes; yields as many folds as documents per class.
  deterministic_rotation,
  // Each iteration draws one training document per class from a seeded RNG.
  random_stratified,
};

struct FoldScheme {
  FoldMode mode = FoldMode::deterministic_rotation;
  std::size_t iterations = 3;  // random_stratified only
  std::uint64_t seed = 1;
};

struct Fold {
  std::vector<std::string> train_ids;  // sorted
  std::vector<std::string> test_ids;   // sorted
};

/// One training document per class, the rest held out. Throws DataError when
/// a class has fewer than two documents or rotation meets unbalanced classes.
std::vector<Fold> make_folds(std::span<const LabeledDoc> corpus, const FoldScheme& scheme);

/// Macro-averaged F1 over the classes present in `truth`. Classes with an
/// empty precision or recall denominator score 0.
double f1_macro(std::span<const std::string> predicted, std::span<const std::string> truth);

/// Which rows supply z-score means and deviations.
enum class ScalingReference { training_set, combined };

/// Mean macro-F1 over folds of 1-NN attribution on `freqs`. Delta measures
/// are z-scored against the fold's reference rows; Manhattan uses raw values.
double evaluate_features(const FrequencyMatrix& freqs, std::span<const LabeledDoc> labels,
                         std::span<const Fold> folds, DistanceMeasure measure,
                         ScalingReference scaling = ScalingReference::training_set);

enum class BackgroundMode { knn, radius };

std::string_view to_string(BackgroundMode mode);
BackgroundMode parse_background_mode(std::string_view name);

struct GridOptions {
  std::vector<std::size_t> mfw_list;
  // Neighbor counts (knn, positive integers) or similarity thresholds (radius).
  std::vector<double> backgrounds;
  std::vector<DistanceMeasure> measures{kAllMeasures.begin(), kAllMeasures.end()};
  FoldScheme folds;
  ScalingReference scaling = ScalingReference::training_set;
  BackgroundSelection selection = BackgroundSelection::truncate_then_filter;
  int jobs = 1;
};

struct GridCell {
  double f1 = std::numeric_limits<double>::quiet_NaN();
  std::string error;  // non-empty when the cell failed

  bool failed() const { return !error.empty(); }
};

/// F1 scores of one measure over MFW count × background, plus the classical
/// baseline per MFW count.
struct ResultGrid {
  DistanceMeasure measure = DistanceMeasure::cosine_delta;
  BackgroundMode mode = BackgroundMode::knn;
  std::vector<std::size_t> axis_mfw;
  std::vector<double> axis_background;
  std::vector<GridCell> cells;     // |axis_mfw| × |axis_background|, row-major
  std::vector<GridCell> baseline;  // per MFW count

  const GridCell& cell(std::size_t mfw, std::size_t background) const {
    return cells[mfw * axis_background.size() + background];
  }
  GridCell& cell(std::size_t mfw, std::size_t background) {
    return cells[mfw * axis_background.size() + background];
  }
};

/// Grid over the `table` rows of the corpus's most frequent words. Returns one
/// grid per requested measure, in request order.
std::vector<ResultGrid> grid_search(const DocTermMatrix& dtm, std::span<const LabeledDoc> labels,
                                    const NeighborTable& table, const GridOptions& options);

/// Radius variant: backgrounds are cosine-similarity thresholds in `model`.
std::vector<ResultGrid> grid_search(const DocTermMatrix& dtm, std::span<const LabeledDoc> labels,
                                    const VectorModel& model, const GridOptions& options);

struct GainMap {
  DistanceMeasure measure = DistanceMeasure::cosine_delta;
  BackgroundMode mode = BackgroundMode::knn;
  std::vector<std::size_t> axis_mfw;
  std::vector<double> axis_background;
  std::vector<double> gains;  // NaN where the cell failed

  double at(std::size_t mfw, std::size_t background) const {
    return gains[mfw * axis_background.size() + background];
  }
};

/// score - baseline per cell. Throws UsageError if any baseline is missing.
GainMap gain_map(const ResultGrid& grid);

}  // namespace boostfreq
