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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "boostfreq/classify.hpp"
#include "boostfreq/error.hpp"
#include "support/oracles.hpp"
#include "support/warnings.hpp"

namespace boostfreq {
namespace {

using Rows = std::vector<std::vector<double>>;

FrequencyMatrix matrix(const Rows& rows, std::vector<std::string> features = {}) {
  FrequencyMatrix m;
  if (features.empty())
    for (std::size_t c = 0; c < rows.front().size(); ++c) features.push_back("f" + std::to_string(c));
  m.features = features;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.doc_ids.push_back("d" + std::to_string(r));
    m.values.insert(m.values.end(), rows[r].begin(), rows[r].end());
  }
  return m;
}

std::vector<std::size_t> ranks(std::size_t m) {
  std::vector<std::size_t> r(m);
  std::iota(r.begin(), r.end(), 1);
  return r;
}

TEST(Measures, NamesRoundTrip) {
  for (auto m : kAllMeasures) EXPECT_EQ(parse_measure(to_string(m)), m);
  EXPECT_THROW(parse_measure("euclid"), UsageError);
  EXPECT_FALSE(uses_zscores(DistanceMeasure::manhattan));
  EXPECT_TRUE(uses_zscores(DistanceMeasure::eder_delta));
}

TEST(Zscore, TwoRowsAndConstantColumn) {
  testing::CapturedWarnings warnings;
  auto m = matrix({{0.2, 0.5}, {0.4, 0.5}});
  auto z = zscore(m, m);
  ASSERT_EQ(z.features, std::vector<std::string>{"f0"});
  EXPECT_NEAR(z.values[0], -0.7071067811865475, 1e-15);
  EXPECT_NEAR(z.values[1], 0.7071067811865475, 1e-15);
  EXPECT_NEAR(z.feature_means[0], 0.3, 1e-15);
  EXPECT_TRUE(warnings.contains("f1"));
}

TEST(Zscore, Errors) {
  auto one = matrix({{0.1, 0.2}});
  auto two = matrix({{0.1, 0.2}, {0.3, 0.1}});
  EXPECT_THROW(zscore(two, one), UsageError);
  auto other = matrix({{0.1, 0.2}, {0.3, 0.1}}, {"x", "y"});
  EXPECT_THROW(zscore(two, other), UsageError);
}

TEST(Zscore, MatchesOracleAndIsAffineInvariant) {
  testing::CapturedWarnings quiet;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Rows train(5, std::vector<double>(6)), test(3, std::vector<double>(6));
    for (auto& r : train)
      for (auto& v : r) v = u(rng);
    for (auto& r : test)
      for (auto& v : r) v = u(rng);
    auto [ztrain, ztest] = testing::oracle_zscore(train, test);
    auto z = zscore(matrix(test), matrix(train));
    for (std::size_t r = 0; r < test.size(); ++r)
      for (std::size_t c = 0; c < z.cols(); ++c) EXPECT_NEAR(z.row(r)[c], ztest[r][c], 1e-12);

    Rows scaled = train;
    for (auto& r : scaled)
      for (auto& v : r) v = 3.0 * v + 2.0;
    auto zs = zscore(matrix(scaled), matrix(scaled));
    auto zt = zscore(matrix(train), matrix(train));
    for (std::size_t i = 0; i < zs.values.size(); ++i) EXPECT_NEAR(zs.values[i], zt.values[i], 1e-9);
  }
}

TEST(Distance, HandValues) {
  std::vector<double> a{1, 0}, b{0, 1};
  auto r = ranks(2);
  EXPECT_EQ(distance(a, b, DistanceMeasure::manhattan, r), 2.0);
  EXPECT_EQ(distance(a, b, DistanceMeasure::burrows_delta, r), 1.0);
  EXPECT_EQ(distance(a, b, DistanceMeasure::cosine_delta, r), 1.0);
  EXPECT_EQ(distance(a, b, DistanceMeasure::eder_delta, r), 1.5);
  EXPECT_THROW(distance(a, std::vector<double>{1.0}, DistanceMeasure::manhattan, r), UsageError);
}

TEST(Distance, PropertiesAgainstOracles) {
  testing::CapturedWarnings quiet;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 12;
    std::vector<double> a(m), b(m);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    auto r = ranks(m);
    EXPECT_NEAR(distance(a, b, DistanceMeasure::manhattan, r), testing::oracle_manhattan(a, b), 1e-12);
    EXPECT_NEAR(distance(a, b, DistanceMeasure::burrows_delta, r), testing::oracle_burrows(a, b), 1e-12);
    EXPECT_NEAR(distance(a, b, DistanceMeasure::eder_delta, r), testing::oracle_eder(a, b), 1e-12);
    EXPECT_NEAR(distance(a, b, DistanceMeasure::cosine_delta, r), testing::oracle_cosine_delta(a, b), 1e-12);
    for (auto measure : kAllMeasures) {
      const double d = distance(a, b, measure, r);
      EXPECT_GE(d, 0.0);
      EXPECT_EQ(d, distance(b, a, measure, r));
      EXPECT_EQ(distance(a, a, measure, r), 0.0);
    }
    std::vector<double> scaled = a;
    for (auto& v : scaled) v *= 4.5;
    EXPECT_NEAR(distance(a, scaled, DistanceMeasure::cosine_delta, r), 0.0, 1e-12);
  }
}

TEST(Distance, CosineOfZeroVectorIsOne) {
  testing::CapturedWarnings warnings;
  std::vector<double> z{0, 0}, a{1, 2};
  EXPECT_EQ(distance(z, a, DistanceMeasure::cosine_delta, ranks(2)), 1.0);
  EXPECT_FALSE(warnings.messages().empty());
}

TEST(Nearest, TiesGoToSmallestTrainingId) {
  ScaledMatrix train = unscaled(matrix({{1.0, 0.0}, {1.0, 0.0}}));
  train.doc_ids = {"zeta", "alpha"};
  std::vector<std::string> labels{"Z", "A"};
  ScaledMatrix test = unscaled(matrix({{0.5, 0.0}}));
  for (auto measure : kAllMeasures)
    EXPECT_EQ(classify_nn(train, labels, test, measure), std::vector<std::string>{"A"});
}

TEST(Nearest, MatchesBruteForce) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> small(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng() % 5, n_train = 1 + rng() % 6, n_test = 1 + rng() % 4;
    Rows train(n_train, std::vector<double>(m)), test(n_test, std::vector<double>(m));
    // Coarse integer values make exact distance ties frequent.
    for (auto& r : train)
      for (auto& v : r) v = small(rng);
    for (auto& r : test)
      for (auto& v : r) v = small(rng);
    ScaledMatrix tr = unscaled(matrix(train)), te = unscaled(matrix(test));
    std::vector<std::string> ids, labels;
    for (std::size_t i = 0; i < n_train; ++i) {
      ids.push_back("t" + std::to_string((i * 7) % n_train) + "_" + std::to_string(i));
      labels.push_back("L" + std::to_string(i % 3));
    }
    tr.doc_ids = ids;
    const std::vector<std::pair<DistanceMeasure, double (*)(const std::vector<double>&, const std::vector<double>&)>>
        cases{{DistanceMeasure::manhattan, testing::oracle_manhattan},
              {DistanceMeasure::burrows_delta, testing::oracle_burrows},
              {DistanceMeasure::eder_delta, testing::oracle_eder}};
    for (const auto& [measure, oracle] : cases)
      EXPECT_EQ(classify_nn(tr, labels, te, measure), testing::oracle_nearest(train, ids, labels, test, oracle));
  }
}

}  // namespace
}  // namespace boostfreq
