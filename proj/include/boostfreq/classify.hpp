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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boostfreq/frequencies.hpp"

namespace boostfreq {

enum class DistanceMeasure { cosine_delta, burrows_delta, eder_delta, manhattan };

inline constexpr std::array<DistanceMeasure, 4> kAllMeasures = {
    DistanceMeasure::cosine_delta, DistanceMeasure::burrows_delta, DistanceMeasure::eder_delta,
    DistanceMeasure::manhattan};

std::string_view to_string(DistanceMeasure measure);
/// Accepts the names produced by to_string ("cosine-delta", ...).
DistanceMeasure parse_measure(std::string_view name);

/// Whether the measure works on z-scores (the Delta family) or on raw
/// relative frequencies (Manhattan).
bool uses_zscores(DistanceMeasure measure);

/// Feature table ready for distance computations. For z-scored data the
/// means and standard deviations of the reference set are kept; columns that
/// were constant in the reference are absent.
struct ScaledMatrix {
  std::vector<std::string> doc_ids;
  std::vector<std::string> features;
  std::vector<double> values;  // row-major
  std::vector<double> feature_means;
  std::vector<double> feature_sds;

  std::size_t rows() const { return doc_ids.size(); }
  std::size_t cols() const { return features.size(); }
  std::span<const double> row(std::size_t doc) const { return {values.data() + doc * cols(), cols()}; }
};

/// Per-feature standardization with mean and sample standard deviation taken
/// from `reference`. Features constant in the reference are dropped with a
/// warning. Throws UsageError for mismatched features or a one-row reference.
ScaledMatrix zscore(const FrequencyMatrix& freqs, const FrequencyMatrix& reference,
                    bool warn_on_drop = true);

/// Wraps raw frequencies unchanged (means 0, sds 1), for Manhattan.
ScaledMatrix unscaled(const FrequencyMatrix& freqs);

/// Distance between two feature vectors. `ranks` gives the frequency rank
/// (1 = most frequent) of each feature and is used only by Eder's Delta.
double distance(std::span<const double> a, std::span<const double> b, DistanceMeasure measure,
                std::span<const std::size_t> ranks);

/// 1-nearest-neighbor attribution: each test row gets the label of the closest
/// training row, ties going to the smallest training id. Feature ranks are the
/// column positions (columns are in frequency order).
std::vector<std::string> classify_nn(const ScaledMatrix& train, std::span<const std::string> train_labels,
                                     const ScaledMatrix& test, DistanceMeasure measure);

}  // namespace boostfreq
