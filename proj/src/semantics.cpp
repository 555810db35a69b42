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

#include "boostfreq/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "boostfreq/diagnostics.hpp"
#include "boostfreq/error.hpp"
#include "boostfreq/parallel.hpp"
#include "boostfreq/text_format.hpp"

namespace boostfreq {
namespace fs = std::filesystem;

namespace {

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double clamp_similarity(double s) { return std::clamp(s, -1.0, 1.0); }

// Same arithmetic as cosine_similarity, using cached squared norms.
double model_similarity(const VectorModel& model, std::size_t a, std::size_t b) {
  double na = model.squared_norm(a), nb = model.squared_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return clamp_similarity(dot(model.vector(a), model.vector(b)) / std::sqrt(na * nb));
}

struct SimilarityOrder {
  const VectorModel& model;
  bool operator()(const std::pair<std::size_t, double>& a,
                  const std::pair<std::size_t, double>& b) const {
    if (a.second != b.second) return a.second > b.second;
    return model.words()[a.first] < model.words()[b.first];
  }
};

std::vector<std::pair<std::size_t, double>> all_similarities(const VectorModel& model,
                                                             std::size_t target) {
  std::vector<std::pair<std::size_t, double>> sims;
  sims.reserve(model.size() - 1);
  for (std::size_t w = 0; w < model.size(); ++w)
    if (w != target) sims.emplace_back(w, model_similarity(model, target, w));
  return sims;
}

}  // namespace

VectorModel::VectorModel(std::size_t dims, std::vector<std::string> words, std::vector<double> data)
    : dims_(dims), words_(std::move(words)), data_(std::move(data)) {
  if (dims_ == 0) throw DataError("vector model must have at least one dimension");
  if (data_.size() != words_.size() * dims_)
    throw DataError("vector model data has " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(words_.size() * dims_));
  for (double x : data_)
    if (!std::isfinite(x)) throw DataError("vector model contains a non-finite component");

  std::size_t zero = 0;
  squared_norms_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!lookup_.emplace(words_[i], i).second)
      throw DataError("duplicate word in vector model: " + words_[i]);
    squared_norms_[i] = dot(vector(i), vector(i));
    if (squared_norms_[i] == 0.0) ++zero;
  }
  if (zero == words_.size()) throw DataError("vector model has no nonzero vector");
  if (zero > 0)
    warn(std::to_string(zero) + " zero-norm vector(s) in model; their similarities are 0");
}

std::optional<std::size_t> VectorModel::index_of(std::string_view word) const {
  auto it = lookup_.find(std::string(word));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

VectorModel parse_vectors(std::istream& in, const std::string& source_name) {
  std::vector<std::string> words;
  std::vector<double> data;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t dims = 0;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;

  auto fail = [&](const std::string& what) {
    throw DataError(source_name + ":" + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(std::move(f));
    if (parts.empty()) continue;

    if (first_content) {
      first_content = false;
      // A leading "<count> <dims>" line is a header, not a word.
      if (parts.size() == 2) {
        auto a = parse_double(parts[0]), b = parse_double(parts[1]);
        bool integral = a && b && *a >= 0 && *b >= 1 && std::floor(*a) == *a &&
                        std::floor(*b) == *b && parts[0].find_first_of(".eE") == std::string::npos;
        if (integral) continue;
      }
    }

    if (parts.size() < 2) fail("expected a word followed by vector components");
    if (dims == 0) dims = parts.size() - 1;
    if (parts.size() - 1 != dims)
      fail("expected " + std::to_string(dims) + " components, found " +
           std::to_string(parts.size() - 1));

    std::vector<double> row(dims);
    for (std::size_t i = 0; i < dims; ++i) {
      auto v = parse_double(parts[i + 1]);
      if (!v) fail("non-numeric component '" + parts[i + 1] + "'");
      if (!std::isfinite(*v)) fail("non-finite component '" + parts[i + 1] + "'");
      row[i] = *v;
    }

    auto [it, inserted] = seen.emplace(parts[0], words.size());
    if (inserted) {
      words.push_back(parts[0]);
      data.insert(data.end(), row.begin(), row.end());
    } else {
      warn(source_name + ":" + std::to_string(line_no) + ": duplicate word '" + parts[0] +
           "', keeping the last occurrence");
      std::copy(row.begin(), row.end(), data.begin() + static_cast<std::ptrdiff_t>(it->second * dims));
    }
  }
  if (words.empty()) throw DataError(source_name + ": no word vectors found");
  return VectorModel(dims, std::move(words), std::move(data));
}

VectorModel load_vectors(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read vector file: " + path.string());
  return parse_vectors(in, path.string());
}

void save_vectors(const VectorModel& model, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << model.size() << ' ' << model.dims() << '\n';
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << model.words()[i];
    for (double x : model.vector(i)) out << ' ' << format_double(x);
    out << '\n';
  }
  if (!out) throw DataError("error while writing " + path.string());
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw UsageError("cosine similarity of vectors with different dimensions");
  double nu = dot(u, u), nv = dot(v, v);
  if (nu == 0.0 || nv == 0.0) {
    warn("cosine similarity with a zero-norm vector; returning 0");
    return 0.0;
  }
  return clamp_similarity(dot(u, v) / std::sqrt(nu * nv));
}

std::vector<std::pair<std::size_t, double>> ranked_similarities(const VectorModel& model,
                                                                std::size_t target) {
  auto sims = all_similarities(model, target);
  std::sort(sims.begin(), sims.end(), SimilarityOrder{model});
  return sims;
}

NeighborTable neighbor_table(const VectorModel& model, std::span<const std::string> targets,
                             std::size_t depth, int jobs) {
  if (depth == 0) throw UsageError("neighbor depth must be positive");
  NeighborTable table;
  table.targets.assign(targets.begin(), targets.end());
  table.depth = depth;
  table.neighbors.resize(targets.size());

  std::vector<std::optional<std::size_t>> index(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    index[t] = model.index_of(targets[t]);
    if (!index[t]) warn("target '" + targets[t] + "' is not in the vector model; empty neighbor list");
  }

  parallel_for(targets.size(), jobs, [&](std::size_t t) {
    if (!index[t]) return;
    auto sims = all_similarities(model, *index[t]);
    auto keep = std::min(depth, sims.size());
    std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(keep), sims.end(),
                      SimilarityOrder{model});
    auto& out = table.neighbors[t];
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) out.push_back({model.words()[sims[i].first], sims[i].second});
  });
  return table;
}

std::vector<Neighbor> radius_background(const VectorModel& model, std::string_view target,
                                        double threshold) {
  auto index = model.index_of(target);
  if (!index) throw UsageError("word '" + std::string(target) + "' is not in the vector model");
  std::vector<Neighbor> out;
  for (auto& [w, s] : ranked_similarities(model, *index)) {
    if (s < threshold) break;
    out.push_back({model.words()[w], s});
  }
  return out;
}

void write_neighbor_table_tsv(const NeighborTable& table, std::ostream& out) {
  out << "#depth\t" << table.depth << '\n';
  for (std::size_t t = 0; t < table.targets.size(); ++t) {
    out << table.targets[t];
    for (const auto& n : table.neighbors[t]) out << '\t' << n.word << ':' << format_double(n.similarity);
    out << '\n';
  }
}

void write_neighbor_table_tsv(const NeighborTable& table, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_neighbor_table_tsv(table, out);
  if (!out) throw DataError("error while writing " + path.string());
}

NeighborTable read_neighbor_table_tsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read neighbor table: " + path.string());
  NeighborTable table;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    for (std::size_t start = 0;;) {
      auto tab = line.find('\t', start);
      cells.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cells[0] == "#depth") {
      if (cells.size() != 2) fail("malformed depth line");
      try {
        table.depth = std::stoull(cells[1]);
      } catch (const std::exception&) {
        fail("invalid depth");
      }
      continue;
    }
    table.targets.push_back(cells[0]);
    auto& list = table.neighbors.emplace_back();
    for (std::size_t i = 1; i < cells.size(); ++i) {
      auto colon = cells[i].rfind(':');
      if (colon == std::string::npos || colon == 0) fail("expected word:similarity, got '" + cells[i] + "'");
      auto sim = parse_double(std::string_view(cells[i]).substr(colon + 1));
      if (!sim || *sim < -1.0 || *sim > 1.0) fail("invalid similarity in '" + cells[i] + "'");
      list.push_back({cells[i].substr(0, colon), *sim});
    }
  }
  if (table.depth == 0) {
    for (const auto& l : table.neighbors) table.depth = std::max(table.depth, l.size());
    if (table.depth == 0) table.depth = 1;
  }
  return table;
}

}  // namespace boostfreq
