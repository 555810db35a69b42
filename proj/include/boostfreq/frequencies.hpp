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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "boostfreq/corpus.hpp"
#include "boostfreq/semantics.hpp"

namespace boostfreq {

/// Documents × features table of normalized frequencies in [0, 1].
struct FrequencyMatrix {
  std::vector<std::string> doc_ids;
  std::vector<std::string> features;
  std::vector<double> values;  // row-major

  std::size_t rows() const { return doc_ids.size(); }
  std::size_t cols() const { return features.size(); }
  double at(std::size_t doc, std::size_t feature) const { return values[doc * cols() + feature]; }
  std::span<const double> row(std::size_t doc) const { return {values.data() + doc * cols(), cols()}; }

  /// The first `k` feature columns.
  FrequencyMatrix leading_columns(std::size_t k) const;
  /// The given rows, in the given order.
  FrequencyMatrix select_rows(std::span<const std::size_t> rows) const;
};

/// How a neighbor list is cut to n entries when some neighbors are missing
/// from the corpus vocabulary.
enum class BackgroundSelection {
  // Take the first n neighbors, then drop those absent from the corpus. This
  // is the behavior of the original R routine and the default.
  truncate_then_filter,
  // Drop absent neighbors first, then take n.
  filter_then_truncate,
};

/// count(d, w) / total_tokens(d). Throws UsageError for unknown features and
/// DataError for empty documents.
FrequencyMatrix classical_frequencies(const DocTermMatrix& dtm, std::span<const std::string> features);

/// Occurrences of each target divided by the occurrences of the target plus
/// its first `n` semantic neighbors. Features follow the table's target
/// order. When no neighbor survives, the most frequent corpus word stands in
/// as background; 0/0 cells become 0.
FrequencyMatrix enhanced_frequencies(const DocTermMatrix& dtm, const NeighborTable& table,
                                     std::size_t n,
                                     BackgroundSelection selection = BackgroundSelection::truncate_then_filter,
                                     int jobs = 1);

/// Same normalization with the background defined as every corpus word whose
/// cosine similarity to the target is at least `threshold`.
FrequencyMatrix enhanced_frequencies_radius(const DocTermMatrix& dtm, const VectorModel& model,
                                            std::span<const std::string> targets, double threshold,
                                            int jobs = 1);

/// One matrix per background size, computed in a single cumulative pass per
/// target. Each result is bitwise identical to enhanced_frequencies with that
/// size.
std::vector<FrequencyMatrix> enhanced_frequencies_sweep(
    const DocTermMatrix& dtm, const NeighborTable& table, std::span<const std::size_t> sizes,
    BackgroundSelection selection = BackgroundSelection::truncate_then_filter, int jobs = 1);

/// One matrix per threshold; each bitwise identical to
/// enhanced_frequencies_radius with that threshold.
std::vector<FrequencyMatrix> enhanced_frequencies_radius_sweep(const DocTermMatrix& dtm,
                                                               const VectorModel& model,
                                                               std::span<const std::string> targets,
                                                               std::span<const double> thresholds,
                                                               int jobs = 1);

// TSV layout: header `doc_id<TAB>features...`, one row per document, values
// in shortest round-trip decimal.
void write_frequency_tsv(const FrequencyMatrix& freqs, std::ostream& out);
void write_frequency_tsv(const FrequencyMatrix& freqs, const std::filesystem::path& path);
FrequencyMatrix read_frequency_tsv(const std::filesystem::path& path);

}  // namespace boostfreq
