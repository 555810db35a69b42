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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace boostfreq {

/// Dense word vectors of a fixed dimension. Immutable after construction.
class VectorModel {
 public:
  /// `data` is row-major |words| × dims. Throws DataError for non-finite
  /// entries, duplicate words, a size mismatch or an all-zero model.
  VectorModel(std::size_t dims, std::vector<std::string> words, std::vector<double> data);

  std::size_t dims() const { return dims_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  std::span<const double> vector(std::size_t i) const { return {data_.data() + i * dims_, dims_}; }
  double squared_norm(std::size_t i) const { return squared_norms_[i]; }
  std::optional<std::size_t> index_of(std::string_view word) const;

 private:
  std::size_t dims_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::vector<double> squared_norms_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// Reads the common text format for pretrained embeddings: an optional
/// `<count> <dims>` header, then `word v1 ... vd` per line. Later duplicates
/// replace earlier ones with a warning.
VectorModel load_vectors(const std::filesystem::path& path);
VectorModel parse_vectors(std::istream& in, const std::string& source_name = "<stream>");

/// Writes the same format with a header line; values are printed in
/// shortest round-trip form so reloading is exact.
void save_vectors(const VectorModel& model, const std::filesystem::path& path);

struct PpmiSvdOptions {
  std::size_t dims = 100;
  std::size_t window = 5;
  std::uint64_t seed = 1;
  // Words rarer than this are left out of the model.
  std::uint64_t min_count = 1;
  std::size_t oversample = 10;
  std::size_t power_iterations = 4;
};

/// Count-based embedding: symmetric window co-occurrence counts, positive
/// PMI, rank-`dims` truncated SVD (randomized, seeded). Word vectors are the
/// left singular vectors scaled by the square roots of the singular values.
/// Each token stream is one document; windows never cross documents.
VectorModel train_ppmi_svd(std::span<const std::vector<std::string>> documents,
                           const PpmiSvdOptions& options = {});

/// dot(u, v) / sqrt(|u|^2 |v|^2), clamped to [-1, 1]. A zero-norm input yields 0 with
/// a warning.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

struct Neighbor {
  std::string word;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Per target word, its most similar other words (similarity descending,
/// ties lexicographic). Targets absent from the model have empty lists.
struct NeighborTable {
  std::vector<std::string> targets;
  std::vector<std::vector<Neighbor>> neighbors;
  std::size_t depth = 0;
};

NeighborTable neighbor_table(const VectorModel& model, std::span<const std::string> targets,
                             std::size_t depth, int jobs = 1);

/// All words other than `target` whose similarity to it is at least
/// `threshold`, most similar first. Throws UsageError when `target` is not in
/// the model.
std::vector<Neighbor> radius_background(const VectorModel& model, std::string_view target,
                                        double threshold);

/// Similarities of `target` to every other model word, most similar first
/// with lexicographic ties. Shared by the kNN and radius paths.
std::vector<std::pair<std::size_t, double>> ranked_similarities(const VectorModel& model,
                                                                std::size_t target);

// TSV layout: a `#depth<TAB>d` line, then `target<TAB>word:similarity...`.
void write_neighbor_table_tsv(const NeighborTable& table, std::ostream& out);
void write_neighbor_table_tsv(const NeighborTable& table, const std::filesystem::path& path);
NeighborTable read_neighbor_table_tsv(const std::filesystem::path& path);

}  // namespace boostfreq
