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

#include "boostfreq/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boostfreq/diagnostics.hpp"
#include "boostfreq/error.hpp"

namespace boostfreq {

std::string_view to_string(DistanceMeasure measure) {
  switch (measure) {
    case DistanceMeasure::cosine_delta: return "cosine-delta";
    case DistanceMeasure::burrows_delta: return "burrows-delta";
    case DistanceMeasure::eder_delta: return "eder-delta";
    case DistanceMeasure::manhattan: return "manhattan";
  }
  return "unknown";
}

DistanceMeasure parse_measure(std::string_view name) {
  for (auto m : kAllMeasures)
    if (to_string(m) == name) return m;
  throw UsageError("unknown distance measure '" + std::string(name) +
                   "' (expected cosine-delta, burrows-delta, eder-delta or manhattan)");
}

bool uses_zscores(DistanceMeasure measure) { return measure != DistanceMeasure::manhattan; }

ScaledMatrix zscore(const FrequencyMatrix& freqs, const FrequencyMatrix& reference, bool warn_on_drop) {
  if (freqs.features != reference.features)
    throw UsageError("z-scoring requires identical feature lists");
  if (reference.rows() < 2)
    throw UsageError("z-scoring needs at least two reference rows for a sample standard deviation");

  const std::size_t cols = reference.cols();
  const double n = static_cast<double>(reference.rows());
  std::vector<std::size_t> kept;
  std::vector<std::string> dropped;
  ScaledMatrix out;
  out.doc_ids = freqs.doc_ids;
  for (std::size_t f = 0; f < cols; ++f) {
    double sum = 0.0;
    for (std::size_t d = 0; d < reference.rows(); ++d) sum += reference.at(d, f);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t d = 0; d < reference.rows(); ++d) {
      const double dev = reference.at(d, f) - mean;
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0) {
      dropped.push_back(freqs.features[f]);
      continue;
    }
    kept.push_back(f);
    out.features.push_back(freqs.features[f]);
    out.feature_means.push_back(mean);
    out.feature_sds.push_back(sd);
  }

  if (warn_on_drop && !dropped.empty()) {
    std::string list;
    for (std::size_t i = 0; i < dropped.size() && i < 5; ++i) list += (i ? ", " : "") + dropped[i];
    if (dropped.size() > 5) list += ", ...";
    warn(std::to_string(dropped.size()) + " feature(s) constant in the reference set were dropped: " + list);
  }

  out.values.reserve(freqs.rows() * kept.size());
  for (std::size_t d = 0; d < freqs.rows(); ++d)
    for (std::size_t k = 0; k < kept.size(); ++k)
      out.values.push_back((freqs.at(d, kept[k]) - out.feature_means[k]) / out.feature_sds[k]);
  return out;
}

ScaledMatrix unscaled(const FrequencyMatrix& freqs) {
  return ScaledMatrix{freqs.doc_ids, freqs.features, freqs.values,
                      std::vector<double>(freqs.cols(), 0.0), std::vector<double>(freqs.cols(), 1.0)};
}

namespace {

// Flags zero-norm cosine inputs through `degenerate` instead of warning.
double distance_impl(std::span<const double> a, std::span<const double> b, DistanceMeasure measure,
                     std::span<const std::size_t> ranks, bool& degenerate) {
  if (a.size() != b.size()) throw UsageError("distance between vectors of different lengths");
  const std::size_t m = a.size();
  switch (measure) {
    case DistanceMeasure::manhattan:
    case DistanceMeasure::burrows_delta: {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) sum += std::abs(a[i] - b[i]);
      if (measure == DistanceMeasure::manhattan || m == 0) return sum;
      return sum / static_cast<double>(m);
    }
    case DistanceMeasure::eder_delta: {
      if (ranks.size() != m) throw UsageError("Eder's Delta needs one rank per feature");
      const double md = static_cast<double>(m);
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        sum += std::abs(a[i] - b[i]) * (md - static_cast<double>(ranks[i]) + 1.0);
      return sum / md;
    }
    case DistanceMeasure::cosine_delta: {
      double ab = 0.0, aa = 0.0, bb = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
      }
      if (aa == 0.0 || bb == 0.0) {
        degenerate = true;
        return 1.0;
      }
      return std::max(0.0, 1.0 - ab / std::sqrt(aa * bb));
    }
  }
  return 0.0;
}

}  // namespace

double distance(std::span<const double> a, std::span<const double> b, DistanceMeasure measure,
                std::span<const std::size_t> ranks) {
  bool degenerate = false;
  double d = distance_impl(a, b, measure, ranks, degenerate);
  if (degenerate) warn("cosine delta with a zero-norm vector; distance set to 1");
  return d;
}

std::vector<std::string> classify_nn(const ScaledMatrix& train, std::span<const std::string> train_labels,
                                     const ScaledMatrix& test, DistanceMeasure measure) {
  if (train.features != test.features)
    throw UsageError("training and test matrices have different features");
  if (train_labels.size() != train.rows())
    throw UsageError("one label per training document is required");
  if (train.rows() == 0) throw UsageError("classification needs at least one training document");

  std::vector<std::size_t> ranks(train.cols());
  std::iota(ranks.begin(), ranks.end(), 1);

  std::vector<std::size_t> order(train.rows());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return train.doc_ids[a] < train.doc_ids[b]; });

  bool degenerate = false;
  std::vector<std::string> predicted;
  predicted.reserve(test.rows());
  for (std::size_t t = 0; t < test.rows(); ++t) {
    std::size_t best = order.front();
    double best_distance = distance_impl(test.row(t), train.row(best), measure, ranks, degenerate);
    for (std::size_t i = 1; i < order.size(); ++i) {
      double d = distance_impl(test.row(t), train.row(order[i]), measure, ranks, degenerate);
      if (d < best_distance) {
        best_distance = d;
        best = order[i];
      }
    }
    predicted.push_back(train_labels[best]);
  }
  if (degenerate) warn("cosine delta met zero-norm vectors during classification; their distances were set to 1");
  return predicted;
}

}  // namespace boostfreq
