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

#include "boostfreq/frequencies.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "boostfreq/error.hpp"
#include "boostfreq/parallel.hpp"
#include "boostfreq/text_format.hpp"

namespace boostfreq {
namespace fs = std::filesystem;

namespace {

std::size_t require_word(const DocTermMatrix& dtm, const std::string& word) {
  auto w = dtm.word_index(word);
  if (!w) throw DataError("target word '" + word + "' does not occur in the corpus");
  return *w;
}

std::vector<FrequencyMatrix> empty_matrices(const DocTermMatrix& dtm,
                                            std::span<const std::string> features, std::size_t count) {
  FrequencyMatrix blank{dtm.doc_ids(), {features.begin(), features.end()},
                        std::vector<double>(dtm.num_docs() * features.size(), 0.0)};
  return std::vector<FrequencyMatrix>(count, blank);
}

// Fills column `feature` of every output matrix for one target. `background`
// lists vocabulary indices in the order they join the background;
// `prefix[k]` is how many of them matrix k uses. An empty background falls
// back to the most frequent corpus word.
void fill_target_column(const DocTermMatrix& dtm, std::size_t target, std::size_t feature,
                        std::span<const std::size_t> background, std::span<const std::size_t> prefix,
                        std::vector<FrequencyMatrix>& out) {
  const std::size_t docs = dtm.num_docs();
  std::vector<std::size_t> order(prefix.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return prefix[a] < prefix[b]; });

  std::vector<std::uint64_t> sums(docs, 0);
  std::size_t added = 0;
  for (auto k : order) {
    for (; added < prefix[k]; ++added)
      for (const auto& e : dtm.column(background[added])) sums[e.doc] += e.count;

    auto& m = out[k];
    const std::size_t cols = m.cols();
    for (std::size_t d = 0; d < docs; ++d) {
      const std::uint64_t own = dtm.count(d, target);
      const std::uint64_t rest = prefix[k] == 0 ? dtm.count(d, 0) : sums[d];
      const std::uint64_t denom = own + rest;
      m.values[d * cols + feature] =
          denom == 0 ? 0.0 : static_cast<double>(own) / static_cast<double>(denom);
    }
  }
}

}  // namespace

FrequencyMatrix FrequencyMatrix::leading_columns(std::size_t k) const {
  if (k > cols()) throw UsageError("requested more columns than the frequency matrix has");
  FrequencyMatrix out{doc_ids, {features.begin(), features.begin() + static_cast<std::ptrdiff_t>(k)}, {}};
  out.values.reserve(rows() * k);
  for (std::size_t d = 0; d < rows(); ++d) {
    auto r = row(d);
    out.values.insert(out.values.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

FrequencyMatrix FrequencyMatrix::select_rows(std::span<const std::size_t> rows_to_keep) const {
  FrequencyMatrix out{{}, features, {}};
  out.values.reserve(rows_to_keep.size() * cols());
  for (auto d : rows_to_keep) {
    out.doc_ids.push_back(doc_ids.at(d));
    auto r = row(d);
    out.values.insert(out.values.end(), r.begin(), r.end());
  }
  return out;
}

FrequencyMatrix classical_frequencies(const DocTermMatrix& dtm, std::span<const std::string> features) {
  std::vector<std::size_t> columns;
  for (const auto& f : features) {
    auto w = dtm.word_index(f);
    if (!w) throw UsageError("feature '" + f + "' is not in the corpus vocabulary");
    columns.push_back(*w);
  }
  FrequencyMatrix out{dtm.doc_ids(), {features.begin(), features.end()}, {}};
  out.values.resize(dtm.num_docs() * features.size());
  for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
    const auto total = dtm.doc_total(d);
    if (total == 0) throw DataError("document '" + dtm.doc_ids()[d] + "' has no tokens");
    for (std::size_t f = 0; f < columns.size(); ++f)
      out.values[d * columns.size() + f] =
          static_cast<double>(dtm.count(d, columns[f])) / static_cast<double>(total);
  }
  return out;
}

std::vector<FrequencyMatrix> enhanced_frequencies_sweep(const DocTermMatrix& dtm,
                                                        const NeighborTable& table,
                                                        std::span<const std::size_t> sizes,
                                                        BackgroundSelection selection, int jobs) {
  if (table.neighbors.size() != table.targets.size())
    throw DataError("neighbor table has mismatched target and neighbor lists");
  for (auto n : sizes) {
    if (n == 0) throw UsageError("background size must be positive");
    if (n > table.depth)
      throw UsageError("background size " + std::to_string(n) + " exceeds neighbor table depth " +
                       std::to_string(table.depth));
  }
  std::vector<std::size_t> targets;
  for (const auto& t : table.targets) targets.push_back(require_word(dtm, t));

  auto out = empty_matrices(dtm, table.targets, sizes.size());
  parallel_for(targets.size(), jobs, [&](std::size_t f) {
    const auto target = targets[f];
    // Corpus-attested neighbors without the target or repeats, with their
    // position in the original list.
    std::vector<std::size_t> background, position;
    std::unordered_set<std::size_t> seen;
    const auto& list = table.neighbors[f];
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto w = dtm.word_index(list[i].word);
      if (!w || *w == target || !seen.insert(*w).second) continue;
      background.push_back(*w);
      position.push_back(i);
    }

    std::vector<std::size_t> prefix(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      if (selection == BackgroundSelection::filter_then_truncate) {
        prefix[k] = std::min(sizes[k], background.size());
      } else {
        prefix[k] = static_cast<std::size_t>(
            std::lower_bound(position.begin(), position.end(), sizes[k]) - position.begin());
      }
    }
    fill_target_column(dtm, target, f, background, prefix, out);
  });
  return out;
}

FrequencyMatrix enhanced_frequencies(const DocTermMatrix& dtm, const NeighborTable& table,
                                     std::size_t n, BackgroundSelection selection, int jobs) {
  const std::size_t sizes[] = {n};
  return std::move(enhanced_frequencies_sweep(dtm, table, sizes, selection, jobs).front());
}

std::vector<FrequencyMatrix> enhanced_frequencies_radius_sweep(const DocTermMatrix& dtm,
                                                               const VectorModel& model,
                                                               std::span<const std::string> targets,
                                                               std::span<const double> thresholds,
                                                               int jobs) {
  for (double t : thresholds)
    if (!(t >= -1.0 && t <= 1.0)) throw UsageError("similarity threshold must lie in [-1, 1]");

  std::vector<std::size_t> vocab_index, model_index;
  for (const auto& t : targets) {
    vocab_index.push_back(require_word(dtm, t));
    auto m = model.index_of(t);
    if (!m) throw DataError("target word '" + t + "' is not in the vector model");
    model_index.push_back(*m);
  }

  auto out = empty_matrices(dtm, targets, thresholds.size());
  parallel_for(targets.size(), jobs, [&](std::size_t f) {
    std::vector<std::size_t> background;
    std::vector<double> similarity;
    for (auto& [w, s] : ranked_similarities(model, model_index[f])) {
      auto v = dtm.word_index(model.words()[w]);
      if (!v || *v == vocab_index[f]) continue;
      background.push_back(*v);
      similarity.push_back(s);
    }
    std::vector<std::size_t> prefix(thresholds.size());
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      // similarity is non-increasing; count entries >= threshold
      prefix[k] = static_cast<std::size_t>(
          std::partition_point(similarity.begin(), similarity.end(),
                               [&](double s) { return s >= thresholds[k]; }) -
          similarity.begin());
    }
    fill_target_column(dtm, vocab_index[f], f, background, prefix, out);
  });
  return out;
}

FrequencyMatrix enhanced_frequencies_radius(const DocTermMatrix& dtm, const VectorModel& model,
                                            std::span<const std::string> targets, double threshold,
                                            int jobs) {
  const double thresholds[] = {threshold};
  return std::move(enhanced_frequencies_radius_sweep(dtm, model, targets, thresholds, jobs).front());
}

void write_frequency_tsv(const FrequencyMatrix& freqs, std::ostream& out) {
  out << "doc_id";
  for (const auto& f : freqs.features) out << '\t' << f;
  out << '\n';
  for (std::size_t d = 0; d < freqs.rows(); ++d) {
    out << freqs.doc_ids[d];
    for (double v : freqs.row(d)) out << '\t' << format_double(v);
    out << '\n';
  }
}

void write_frequency_tsv(const FrequencyMatrix& freqs, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_frequency_tsv(freqs, out);
  if (!out) throw DataError("error while writing " + path.string());
}

FrequencyMatrix read_frequency_tsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read frequency matrix: " + path.string());
  FrequencyMatrix out;
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    for (std::size_t start = 0;;) {
      auto tab = s.find('\t', start);
      cells.push_back(s.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (line_no == 1) {
      out.features.assign(cells.begin() + 1, cells.end());
      continue;
    }
    if (cells.size() != out.features.size() + 1)
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": wrong number of cells");
    out.doc_ids.push_back(cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      auto v = parse_double(cells[i]);
      if (!v) throw DataError(path.string() + ":" + std::to_string(line_no) + ": invalid value '" + cells[i] + "'");
      out.values.push_back(*v);
    }
  }
  return out;
}

}  // namespace boostfreq
