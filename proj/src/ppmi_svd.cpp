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

// Count-based word vectors: window co-occurrence -> PPMI -> randomized
// truncated SVD (subspace iteration with a seeded Gaussian start).

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "boostfreq/diagnostics.hpp"
#include "boostfreq/error.hpp"
#include "boostfreq/semantics.hpp"

namespace boostfreq {
namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Vocabulary {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> index;
};

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> documents,
                            std::uint64_t min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& doc : documents)
    for (const auto& t : doc) ++counts[t];

  std::vector<std::pair<std::string, std::uint64_t>> ranked;
  for (auto& [w, c] : counts)
    if (c >= min_count) ranked.emplace_back(w, c);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  Vocabulary vocab;
  for (auto& [w, c] : ranked) {
    vocab.index.emplace(w, vocab.words.size());
    vocab.words.push_back(w);
  }
  return vocab;
}

// Symmetric window counts; entry (a, b) counts a within `window` tokens of b.
SparseMatrix cooccurrence_counts(std::span<const std::vector<std::string>> documents,
                                 const Vocabulary& vocab, std::size_t window) {
  const auto n = vocab.words.size();
  std::unordered_map<std::uint64_t, double> pairs;
  std::vector<std::ptrdiff_t> ids;
  for (const auto& doc : documents) {
    ids.clear();
    for (const auto& t : doc) {
      auto it = vocab.index.find(t);
      ids.push_back(it == vocab.index.end() ? -1 : static_cast<std::ptrdiff_t>(it->second));
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < 0) continue;
      auto end = std::min(ids.size(), i + window + 1);
      for (std::size_t j = i + 1; j < end; ++j) {
        if (ids[j] < 0) continue;
        auto a = static_cast<std::uint64_t>(std::min(ids[i], ids[j]));
        auto b = static_cast<std::uint64_t>(std::max(ids[i], ids[j]));
        pairs[(a << 32) | b] += 1.0;
      }
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(pairs.size() * 2);
  for (const auto& [key, count] : pairs) {
    auto a = static_cast<Eigen::Index>(key >> 32);
    auto b = static_cast<Eigen::Index>(key & 0xffffffffu);
    triplets.emplace_back(a, b, count);
    triplets.emplace_back(b, a, count);  // the diagonal sums to 2 * count
  }
  SparseMatrix counts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  counts.setFromTriplets(triplets.begin(), triplets.end());
  return counts;
}

SparseMatrix ppmi(const SparseMatrix& counts) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(counts.rows());
  for (Eigen::Index r = 0; r < counts.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(counts, r); it; ++it) row_sums[r] += it.value();
  const double total = row_sums.sum();

  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index r = 0; r < counts.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(counts, r); it; ++it) {
      double ratio = (it.value() * total) / (row_sums[r] * row_sums[it.col()]);
      double pmi = std::log(ratio);
      if (pmi > 0.0) triplets.emplace_back(r, it.col(), pmi);
    }
  }
  SparseMatrix out(counts.rows(), counts.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

}  // namespace

VectorModel train_ppmi_svd(std::span<const std::vector<std::string>> documents,
                           const PpmiSvdOptions& options) {
  if (options.dims == 0) throw UsageError("embedding dimension must be positive");
  if (options.window == 0) throw UsageError("co-occurrence window must be positive");

  auto vocab = build_vocabulary(documents, options.min_count);
  const auto n = vocab.words.size();
  if (n == 0) throw DataError("cannot train word vectors on an empty corpus");

  SparseMatrix matrix = ppmi(cooccurrence_counts(documents, vocab, options.window));
  if (matrix.nonZeros() == 0)
    throw DataError("PPMI matrix is empty; corpus has no informative co-occurrences");

  std::size_t dims = options.dims;
  if (dims > n) {
    warn("embedding dimension " + std::to_string(dims) + " exceeds vocabulary size " +
         std::to_string(n) + "; reducing");
    dims = n;
  }
  const auto sketch = static_cast<Eigen::Index>(std::min(n, dims + options.oversample));
  const auto rows = static_cast<Eigen::Index>(n);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gaussian;
  Eigen::MatrixXd omega(rows, sketch);
  for (Eigen::Index j = 0; j < sketch; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) omega(i, j) = gaussian(rng);

  // The PPMI matrix is symmetric, so A^T Q = A Q.
  Eigen::MatrixXd basis = orthonormal_basis(matrix * omega);
  for (std::size_t it = 0; it < options.power_iterations; ++it) {
    basis = orthonormal_basis(matrix * basis);
    basis = orthonormal_basis(matrix * basis);
  }

  // A ~= Q Q^T A; the SVD of (A^T Q) = V S U~^T gives U = Q U~.
  Eigen::MatrixXd projected = matrix * basis;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(projected, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::MatrixXd left = basis * svd.matrixV();

  const double tol = sigma[0] * 1e-10;
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(sigma.size()) && sigma[static_cast<Eigen::Index>(rank)] > tol) ++rank;
  if (rank < dims) {
    warn("embedding dimension " + std::to_string(dims) + " exceeds PPMI matrix rank " +
         std::to_string(rank) + "; reducing to the rank");
    dims = rank;
  }

  std::vector<double> data(n * dims);
  for (std::size_t k = 0; k < dims; ++k) {
    auto col = left.col(static_cast<Eigen::Index>(k));
    Eigen::Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    const double sign = col[pivot] < 0 ? -1.0 : 1.0;
    const double scale = sign * std::sqrt(sigma[static_cast<Eigen::Index>(k)]);
    for (std::size_t w = 0; w < n; ++w) data[w * dims + k] = col[static_cast<Eigen::Index>(w)] * scale;
  }
  return VectorModel(dims, std::move(vocab.words), std::move(data));
}

}  // namespace boostfreq
