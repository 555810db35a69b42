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

#include "boostfreq/evaluate.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "boostfreq/error.hpp"
#include "boostfreq/parallel.hpp"

namespace boostfreq {

namespace {

struct RowFold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

std::vector<RowFold> resolve_folds(std::span<const std::string> doc_ids, std::span<const Fold> folds) {
  std::unordered_map<std::string_view, std::size_t> row;
  for (std::size_t i = 0; i < doc_ids.size(); ++i) row.emplace(doc_ids[i], i);
  auto lookup = [&](const std::string& id) {
    auto it = row.find(id);
    if (it == row.end()) throw UsageError("fold refers to unknown document '" + id + "'");
    return it->second;
  };
  std::vector<RowFold> out;
  for (const auto& f : folds) {
    RowFold r;
    for (const auto& id : f.train_ids) r.train.push_back(lookup(id));
    for (const auto& id : f.test_ids) r.test.push_back(lookup(id));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> labels_for_rows(std::span<const std::string> doc_ids,
                                         std::span<const LabeledDoc> labels) {
  std::unordered_map<std::string_view, std::string_view> author;
  for (const auto& l : labels) author.emplace(l.id, l.author);
  std::vector<std::string> out;
  for (const auto& id : doc_ids) {
    auto it = author.find(id);
    if (it == author.end()) throw UsageError("no class label for document '" + id + "'");
    out.emplace_back(it->second);
  }
  return out;
}

double evaluate_rows(const FrequencyMatrix& freqs, std::span<const std::string> row_labels,
                     std::span<const RowFold> folds, DistanceMeasure measure, ScalingReference scaling) {
  if (folds.empty()) throw UsageError("evaluation needs at least one fold");
  double total = 0.0;
  for (const auto& fold : folds) {
    FrequencyMatrix train = freqs.select_rows(fold.train);
    FrequencyMatrix test = freqs.select_rows(fold.test);
    std::vector<std::string> train_labels, truth;
    for (auto r : fold.train) train_labels.push_back(row_labels[r]);
    for (auto r : fold.test) truth.push_back(row_labels[r]);

    std::vector<std::string> predicted;
    if (uses_zscores(measure)) {
      const FrequencyMatrix* reference = &train;
      FrequencyMatrix combined;
      if (scaling == ScalingReference::combined) {
        std::vector<std::size_t> all(fold.train);
        all.insert(all.end(), fold.test.begin(), fold.test.end());
        combined = freqs.select_rows(all);
        reference = &combined;
      }
      predicted = classify_nn(zscore(train, *reference, false), train_labels,
                              zscore(test, *reference, false), measure);
    } else {
      predicted = classify_nn(unscaled(train), train_labels, unscaled(test), measure);
    }
    total += f1_macro(predicted, truth);
  }
  return total / static_cast<double>(folds.size());
}

struct PreparedGrid {
  std::vector<std::string> targets;
  std::vector<std::string> row_labels;
  std::vector<RowFold> folds;
};

PreparedGrid prepare(const DocTermMatrix& dtm, std::span<const LabeledDoc> labels,
                     const GridOptions& options) {
  if (options.mfw_list.empty()) throw UsageError("MFW list is empty");
  if (options.backgrounds.empty()) throw UsageError("background list is empty");
  if (options.measures.empty()) throw UsageError("no distance measures requested");
  for (auto k : options.mfw_list)
    if (k == 0) throw UsageError("MFW counts must be positive");

  PreparedGrid p;
  p.targets = top_words(dtm, *std::max_element(options.mfw_list.begin(), options.mfw_list.end()));
  p.row_labels = labels_for_rows(dtm.doc_ids(), labels);
  std::vector<LabeledDoc> ordered;
  for (std::size_t d = 0; d < dtm.num_docs(); ++d) ordered.push_back({dtm.doc_ids()[d], p.row_labels[d]});
  p.folds = resolve_folds(dtm.doc_ids(), make_folds(ordered, options.folds));
  return p;
}

std::vector<ResultGrid> run_grid(const DocTermMatrix& dtm, const PreparedGrid& prepared,
                                 const std::vector<FrequencyMatrix>& enhanced, BackgroundMode mode,
                                 const GridOptions& options) {
  const std::size_t n_mfw = options.mfw_list.size();
  const std::size_t n_bg = options.backgrounds.size();
  const std::size_t n_measures = options.measures.size();
  const FrequencyMatrix baseline = classical_frequencies(dtm, prepared.targets);

  std::vector<ResultGrid> grids(n_measures);
  for (std::size_t k = 0; k < n_measures; ++k) {
    grids[k].measure = options.measures[k];
    grids[k].mode = mode;
    grids[k].axis_mfw = options.mfw_list;
    grids[k].axis_background = options.backgrounds;
    grids[k].cells.resize(n_mfw * n_bg);
    grids[k].baseline.resize(n_mfw);
  }

  // Task (i, j): MFW row i, background column j; j == n_bg is the baseline.
  parallel_for(n_mfw * (n_bg + 1), options.jobs, [&](std::size_t task) {
    const std::size_t i = task / (n_bg + 1);
    const std::size_t j = task % (n_bg + 1);
    auto slot = [&](std::size_t k) -> GridCell& {
      return j == n_bg ? grids[k].baseline[i] : grids[k].cell(i, j);
    };
    try {
      const FrequencyMatrix& source = j == n_bg ? baseline : enhanced[j];
      FrequencyMatrix freqs = source.leading_columns(options.mfw_list[i]);
      for (std::size_t k = 0; k < n_measures; ++k) {
        try {
          slot(k).f1 = evaluate_rows(freqs, prepared.row_labels, prepared.folds, options.measures[k],
                                     options.scaling);
        } catch (const std::exception& e) {
          slot(k).error = e.what();
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < n_measures; ++k) slot(k).error = e.what();
    }
  });
  return grids;
}

}  // namespace

std::vector<LabeledDoc> labels_of(std::span<const Document> documents) {
  std::vector<LabeledDoc> out;
  for (const auto& d : documents) out.push_back({d.id, d.author});
  return out;
}

std::vector<Fold> make_folds(std::span<const LabeledDoc> corpus, const FoldScheme& scheme) {
  std::map<std::string, std::vector<std::string>> classes;
  for (const auto& d : corpus) {
    if (d.author.empty()) throw DataError("document '" + d.id + "' has an empty class label");
    classes[d.author].push_back(d.id);
  }
  if (classes.empty()) throw DataError("cannot build folds from an empty corpus");
  for (auto& [author, ids] : classes) {
    std::sort(ids.begin(), ids.end());
    if (ids.size() < 2)
      throw DataError("class '" + author + "' has a single document; at least two are needed");
  }

  auto fold_with = [&](auto pick_training) {
    Fold f;
    for (const auto& [author, ids] : classes) {
      const std::size_t chosen = pick_training(ids);
      for (std::size_t i = 0; i < ids.size(); ++i)
        (i == chosen ? f.train_ids : f.test_ids).push_back(ids[i]);
    }
    std::sort(f.train_ids.begin(), f.train_ids.end());
    std::sort(f.test_ids.begin(), f.test_ids.end());
    return f;
  };

  std::vector<Fold> folds;
  if (scheme.mode == FoldMode::deterministic_rotation) {
    const std::size_t per_class = classes.begin()->second.size();
    for (const auto& [author, ids] : classes)
      if (ids.size() != per_class)
        throw DataError("rotation folds need the same number of documents in every class; '" +
                        author + "' has " + std::to_string(ids.size()) + ", expected " +
                        std::to_string(per_class));
    for (std::size_t k = 0; k < per_class; ++k)
      folds.push_back(fold_with([k](const std::vector<std::string>&) { return k; }));
  } else {
    if (scheme.iterations == 0) throw UsageError("random folds need at least one iteration");
    std::mt19937_64 rng(scheme.seed);
    for (std::size_t it = 0; it < scheme.iterations; ++it) {
      folds.push_back(fold_with([&](const std::vector<std::string>& ids) {
        std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
        return pick(rng);
      }));
    }
  }
  return folds;
}

double f1_macro(std::span<const std::string> predicted, std::span<const std::string> truth) {
  if (predicted.size() != truth.size())
    throw UsageError("predictions and truth differ in length");
  if (truth.empty()) throw UsageError("F1 needs at least one labeled document");

  struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0;
  };
  std::map<std::string_view, Counts> classes;
  for (const auto& t : truth) classes.try_emplace(t);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == truth[i]) {
      ++classes[truth[i]].tp;
      continue;
    }
    ++classes[truth[i]].fn;
    if (auto it = classes.find(predicted[i]); it != classes.end()) ++it->second.fp;
  }

  double sum = 0.0;
  for (const auto& [label, c] : classes) {
    const double precision = c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    const double recall = c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (precision + recall > 0.0) sum += 2.0 * precision * recall / (precision + recall);
  }
  return sum / static_cast<double>(classes.size());
}

double evaluate_features(const FrequencyMatrix& freqs, std::span<const LabeledDoc> labels,
                         std::span<const Fold> folds, DistanceMeasure measure, ScalingReference scaling) {
  auto row_labels = labels_for_rows(freqs.doc_ids, labels);
  auto row_folds = resolve_folds(freqs.doc_ids, folds);
  return evaluate_rows(freqs, row_labels, row_folds, measure, scaling);
}

std::string_view to_string(BackgroundMode mode) { return mode == BackgroundMode::knn ? "knn" : "radius"; }

BackgroundMode parse_background_mode(std::string_view name) {
  if (name == "knn") return BackgroundMode::knn;
  if (name == "radius") return BackgroundMode::radius;
  throw UsageError("unknown background mode '" + std::string(name) + "' (expected knn or radius)");
}

std::vector<ResultGrid> grid_search(const DocTermMatrix& dtm, std::span<const LabeledDoc> labels,
                                    const NeighborTable& table, const GridOptions& options) {
  auto prepared = prepare(dtm, labels, options);

  std::vector<std::size_t> sizes;
  for (double b : options.backgrounds) {
    if (!(b >= 1.0) || std::floor(b) != b)
      throw UsageError("kNN background sizes must be positive integers");
    if (b > static_cast<double>(table.depth))
      throw UsageError("background size " + std::to_string(static_cast<std::size_t>(b)) +
                       " exceeds neighbor table depth " + std::to_string(table.depth));
    sizes.push_back(static_cast<std::size_t>(b));
  }

  // Rows of the table for the most frequent words, keyed by word.
  std::unordered_map<std::string_view, std::size_t> row_of;
  for (std::size_t t = 0; t < table.targets.size(); ++t) row_of.emplace(table.targets[t], t);
  NeighborTable subset;
  subset.depth = table.depth;
  for (const auto& word : prepared.targets) {
    auto it = row_of.find(word);
    if (it == row_of.end())
      throw DataError("neighbor table has no row for frequent word '" + word +
                      "'; it must cover the " + std::to_string(prepared.targets.size()) +
                      " most frequent words");
    subset.targets.push_back(word);
    subset.neighbors.push_back(table.neighbors.at(it->second));
  }

  auto enhanced = enhanced_frequencies_sweep(dtm, subset, sizes, options.selection, options.jobs);
  return run_grid(dtm, prepared, enhanced, BackgroundMode::knn, options);
}

std::vector<ResultGrid> grid_search(const DocTermMatrix& dtm, std::span<const LabeledDoc> labels,
                                    const VectorModel& model, const GridOptions& options) {
  auto prepared = prepare(dtm, labels, options);
  for (double b : options.backgrounds)
    if (!(b >= -1.0 && b <= 1.0)) throw UsageError("similarity thresholds must lie in [-1, 1]");
  auto enhanced = enhanced_frequencies_radius_sweep(dtm, model, prepared.targets, options.backgrounds,
                                                    options.jobs);
  return run_grid(dtm, prepared, enhanced, BackgroundMode::radius, options);
}

GainMap gain_map(const ResultGrid& grid) {
  if (grid.baseline.size() != grid.axis_mfw.size())
    throw UsageError("result grid has no baseline row");
  for (std::size_t i = 0; i < grid.baseline.size(); ++i)
    if (grid.baseline[i].failed() || std::isnan(grid.baseline[i].f1))
      throw UsageError("baseline missing for " + std::to_string(grid.axis_mfw[i]) + " MFW");

  GainMap out{grid.measure, grid.mode, grid.axis_mfw, grid.axis_background, {}};
  out.gains.reserve(grid.cells.size());
  for (std::size_t i = 0; i < grid.axis_mfw.size(); ++i)
    for (std::size_t j = 0; j < grid.axis_background.size(); ++j) {
      const auto& c = grid.cell(i, j);
      out.gains.push_back(c.failed() ? std::numeric_limits<double>::quiet_NaN()
                                     : c.f1 - grid.baseline[i].f1);
    }
  return out;
}

}  // namespace boostfreq
