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

// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion.
//
//   acceptance            run every criterion
//   acceptance 3 5        run selected criteria
//
// Exit status: 0 when nothing failed, 1 on failure, 77 when every selected
// criterion was skipped. Criteria that need the public 99-novel benchmark read
// it from $BOOSTFREQ_BENCHMARK_DIR (one `<Author>_<Title>.txt` per novel);
// $BOOSTFREQ_BENCHMARK_VECTORS may name a pretrained embedding file, otherwise
// 100-dimensional PPMI+SVD vectors are trained on the corpus.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boostfreq/classify.hpp"
#include "boostfreq/config.hpp"
#include "boostfreq/corpus.hpp"
#include "boostfreq/diagnostics.hpp"
#include "boostfreq/evaluate.hpp"
#include "boostfreq/frequencies.hpp"
#include "boostfreq/report.hpp"
#include "boostfreq/semantics.hpp"
#include "boostfreq/text_format.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"
#include "support/synthetic_corpus.hpp"
#include "support/temp_dir.hpp"

namespace bf = boostfreq;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::skip, std::move(d)}; }

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

std::optional<fs::path> benchmark_dir() {
  const char* dir = std::getenv("BOOSTFREQ_BENCHMARK_DIR");
  if (!dir || !*dir) return std::nullopt;
  return fs::path(dir);
}

// ---------------------------------------------------------------------------
// Each check can serialize what it computed; the determinism criterion reruns
// the checks and compares these bytes.

struct Artifacts {
  std::string text;
};

// 1. Full background reproduces classical frequencies bit for bit.

Outcome full_background(int jobs, Artifacts* art) {
  std::mt19937_64 rng(1001);
  std::size_t corpora = 0, cells = 0, mismatches = 0;
  while (corpora < 120) {
    auto dtm = bf::testing::random_dtm(rng, 2 + rng() % 6, 2 + rng() % 60);
    if (dtm.vocab_size() < 2) continue;
    ++corpora;
    auto model = bf::testing::random_model_for(rng, dtm.vocab(), 1 + rng() % 8);
    const auto classical = bf::classical_frequencies(dtm, dtm.vocab());
    auto table = bf::neighbor_table(model, dtm.vocab(), dtm.vocab_size() - 1, jobs);
    std::vector<bf::FrequencyMatrix> results{
        bf::enhanced_frequencies(dtm, table, table.depth, bf::BackgroundSelection::truncate_then_filter, jobs),
        bf::enhanced_frequencies(dtm, table, table.depth, bf::BackgroundSelection::filter_then_truncate, jobs),
        bf::enhanced_frequencies_radius(dtm, model, dtm.vocab(), -1.0, jobs)};
    for (const auto& r : results) {
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        ++cells;
        if (r.values[i] != classical.values[i]) ++mismatches;
      }
      if (art) {
        std::ostringstream s;
        bf::write_frequency_tsv(r, s);
        art->text += s.str();
      }
    }
  }
  const std::string d = std::to_string(corpora) + " random corpora, " + std::to_string(cells) + " cells, " +
                        std::to_string(mismatches) + " not bitwise equal";
  return mismatches == 0 ? pass(d) : fail(d);
}

// 2. on/upon in Wuthering Heights.

Outcome on_upon(int, Artifacts*) {
  auto dir = benchmark_dir();
  if (!dir) return skip("BOOSTFREQ_BENCHMARK_DIR not set; needs the benchmark's Wuthering Heights text");
  std::optional<fs::path> file;
  for (const auto& e : fs::directory_iterator(*dir))
    if (e.path().extension() == ".txt" && e.path().filename().string().find("Wuthering") != std::string::npos)
      file = e.path();
  if (!file) return skip("no *Wuthering*.txt in " + dir->string());
  std::ifstream in(*file, std::ios::binary);
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto tokens = bf::tokenize(text);
  auto doc = bf::make_document(file->stem().string(), "x", tokens);
  std::vector<bf::Document> docs{doc};
  auto dtm = bf::build_dtm(docs);
  std::vector<std::string> on{"on"};
  const double freq = bf::classical_frequencies(dtm, on).at(0, 0);
  bf::NeighborTable table{{"on"}, {{{"upon", 1.0}}}, 1};
  const double pair = bf::enhanced_frequencies(dtm, table, 1).at(0, 0);
  const bool ok = std::abs(freq - 0.00687) <= 0.0005 && std::abs(pair - 0.9762) <= 0.0005;
  const std::string d = "f(on) = " + fmt(freq, 5) + " (want 0.00687), on/(on+upon) = " + fmt(pair) + " (want 0.9762)";
  return ok ? pass(d) : fail(d);
}

// 3. Equivalence with the reference routine.

Outcome reference_equivalence(int jobs, Artifacts* art) {
  std::mt19937_64 rng(2002);
  std::size_t instances = 0, mismatches = 0;
  while (instances < 50) {
    auto dtm = bf::testing::random_dtm(rng, 1 + rng() % 8, 2 + rng() % 50);
    if (dtm.vocab_size() < 2) continue;
    ++instances;
    const std::size_t targets = 1 + rng() % dtm.vocab_size();
    const std::size_t depth = 1 + rng() % 20;
    auto table = bf::testing::random_table(rng, dtm, targets, depth, 0.3 + 0.4 * (instances % 2));
    const std::size_t n = 1 + rng() % depth;

    std::vector<std::vector<std::uint64_t>> counts(dtm.num_docs());
    for (std::size_t d = 0; d < dtm.num_docs(); ++d) counts[d].assign(dtm.row(d).begin(), dtm.row(d).end());
    std::vector<std::vector<std::string>> sims;
    for (const auto& list : table.neighbors) {
      auto& row = sims.emplace_back();
      for (const auto& nb : list) row.push_back(nb.word);
    }
    auto expected = bf::testing::reference_routine(counts, dtm.vocab(), sims, n);
    auto got = bf::enhanced_frequencies(dtm, table, n, bf::BackgroundSelection::truncate_then_filter, jobs);
    bool same = true;
    for (std::size_t d = 0; d < dtm.num_docs(); ++d)
      for (std::size_t f = 0; f < targets; ++f) same &= got.at(d, f) == expected[d][f];
    if (!same) ++mismatches;
    if (art) {
      std::ostringstream s;
      bf::write_frequency_tsv(got, s);
      art->text += s.str();
    }
  }
  const std::string d = std::to_string(instances) + " instances, " + std::to_string(mismatches) + " differ";
  return mismatches == 0 ? pass(d) : fail(d);
}

// 4. Distances and 1-NN against brute force.

Outcome classifier(int, Artifacts* art) {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  double worst = 0.0;
  std::size_t label_mismatches = 0, instances = 0;
  std::ostringstream log;
  log.precision(17);
  using Oracle = double (*)(const std::vector<double>&, const std::vector<double>&);
  const std::vector<std::pair<bf::DistanceMeasure, Oracle>> cases{
      {bf::DistanceMeasure::cosine_delta, bf::testing::oracle_cosine_delta},
      {bf::DistanceMeasure::burrows_delta, bf::testing::oracle_burrows},
      {bf::DistanceMeasure::eder_delta, bf::testing::oracle_eder},
      {bf::DistanceMeasure::manhattan, bf::testing::oracle_manhattan}};
  for (; instances < 200; ++instances) {
    const std::size_t docs = 3 + rng() % 8, features = 1 + rng() % 20;
    const std::size_t n_train = 2 + rng() % (docs - 2);
    std::vector<std::vector<double>> train(n_train, std::vector<double>(features)),
        test(docs - n_train, std::vector<double>(features));
    for (auto& r : train)
      for (auto& v : r) v = u(rng);
    for (auto& r : test)
      for (auto& v : r) v = u(rng);
    bf::FrequencyMatrix ftrain, ftest;
    std::vector<std::string> ids, labels;
    for (std::size_t c = 0; c < features; ++c) ftrain.features.push_back("w" + std::to_string(c));
    ftest.features = ftrain.features;
    for (std::size_t i = 0; i < n_train; ++i) {
      ids.push_back("train" + std::to_string(i));
      labels.push_back("A" + std::to_string(i % 3));
      ftrain.values.insert(ftrain.values.end(), train[i].begin(), train[i].end());
    }
    ftrain.doc_ids = ids;
    for (std::size_t i = 0; i < test.size(); ++i) {
      ftest.doc_ids.push_back("test" + std::to_string(i));
      ftest.values.insert(ftest.values.end(), test[i].begin(), test[i].end());
    }
    auto [ztrain, ztest] = bf::testing::oracle_zscore(train, test);
    const auto strain = bf::zscore(ftrain, ftrain, false), stest = bf::zscore(ftest, ftrain, false);
    const auto rtrain = bf::unscaled(ftrain), rtest = bf::unscaled(ftest);

    for (const auto& [measure, oracle] : cases) {
      const bool z = bf::uses_zscores(measure);
      const auto& otrain = z ? ztrain : train;
      const auto& otest = z ? ztest : test;
      const auto& ltrain = z ? strain : rtrain;
      const auto& ltest = z ? stest : rtest;
      std::vector<std::size_t> ranks(ltrain.cols());
      for (std::size_t k = 0; k < ranks.size(); ++k) ranks[k] = k + 1;
      for (std::size_t a = 0; a < otest.size(); ++a)
        for (std::size_t b = 0; b < otrain.size(); ++b) {
          const double mine = bf::distance(ltest.row(a), ltrain.row(b), measure, ranks);
          worst = std::max(worst, std::abs(mine - oracle(otest[a], otrain[b])));
          log << mine << '\n';
        }
      auto got = bf::classify_nn(ltrain, labels, ltest, measure);
      if (got != bf::testing::oracle_nearest(otrain, ids, labels, otest, oracle)) ++label_mismatches;
      for (const auto& l : got) log << l << '\n';
    }
  }
  if (art) art->text += log.str();
  const std::string d = std::to_string(instances) + " instances x 4 measures, max |distance - oracle| = " +
                        bf::format_double(worst) + ", " + std::to_string(label_mismatches) + " label disagreements";
  return worst <= 1e-12 && label_mismatches == 0 ? pass(d) : fail(d);
}

// 5. Synthetic end to end: boosted cosine delta matches or beats the baseline
// somewhere with a tight background.

Outcome synthetic(int jobs, Artifacts* art) {
  bf::testing::SyntheticSpec spec;  // 8 authors x 3 documents
  bf::testing::TempDir dir;
  bf::testing::write_synthetic_corpus(bf::testing::make_synthetic_corpus(spec), dir.path());
  auto texts = bf::read_corpus_texts(dir.path(), {}, jobs);
  auto documents = bf::to_documents(texts);
  auto dtm = bf::build_dtm(documents);
  auto labels = bf::labels_of(documents);

  std::vector<std::vector<std::string>> streams;
  for (auto& t : texts) streams.push_back(std::move(t.tokens));
  bf::PpmiSvdOptions train;
  train.dims = 50;
  train.window = 2;
  auto model = bf::train_ppmi_svd(streams, train);

  bf::GridOptions opt;
  opt.mfw_list = {20, 40, 60, 80, 100, 120};
  opt.backgrounds = {1, 2, 3, 5, 10};
  opt.measures = {bf::DistanceMeasure::cosine_delta};
  opt.jobs = jobs;
  auto targets = bf::top_words(dtm, opt.mfw_list.back());
  auto table = bf::neighbor_table(model, targets, 10, jobs);
  auto grids = bf::grid_search(dtm, labels, table, opt);
  const auto& g = grids.front();

  double best_gain = -1.0;
  std::size_t best_i = 0, best_j = 0;
  for (std::size_t i = 0; i < g.axis_mfw.size(); ++i)
    for (std::size_t j = 0; j < g.axis_background.size(); ++j) {
      if (g.cell(i, j).failed() || g.baseline[i].failed()) continue;
      const double gain = g.cell(i, j).f1 - g.baseline[i].f1;
      if (gain > best_gain) best_gain = gain, best_i = i, best_j = j;
    }
  if (art) {
    std::ostringstream s;
    bf::write_results_csv(grids, s);
    art->text += s.str();
  }
  const std::string d = "best cosine-delta cell: " + std::to_string(g.axis_mfw[best_i]) + " MFW, n = " +
                        bf::format_double(g.axis_background[best_j]) + ", F1 " + fmt(g.cell(best_i, best_j).f1) +
                        " vs baseline " + fmt(g.baseline[best_i].f1) + " (gain " + fmt(best_gain) + ")";
  return best_gain >= 0.0 ? pass(d) : fail(d);
}

// 6 and 7. Benchmark grids.

struct Benchmark {
  bf::DocTermMatrix dtm{{"x"}, {"x"}, {1}};
  std::vector<bf::LabeledDoc> labels;
  bf::VectorModel model{1, {"x"}, {1.0}};
};

std::optional<Benchmark>& benchmark_cache() {
  static std::optional<Benchmark> cache;
  return cache;
}

const Benchmark& load_benchmark(const fs::path& dir, int jobs) {
  auto& cache = benchmark_cache();
  if (cache) return *cache;
  auto texts = bf::read_corpus_texts(dir, {}, jobs);
  auto documents = bf::to_documents(texts);
  Benchmark b;
  b.dtm = bf::build_dtm(documents);
  b.labels = bf::labels_of(documents);
  if (const char* vectors = std::getenv("BOOSTFREQ_BENCHMARK_VECTORS"); vectors && *vectors) {
    b.model = bf::load_vectors(vectors);
  } else {
    std::vector<std::vector<std::string>> streams;
    for (auto& t : texts) streams.push_back(std::move(t.tokens));
    bf::PpmiSvdOptions train;
    train.dims = 100;
    train.min_count = 5;
    b.model = bf::train_ppmi_svd(streams, train);
  }
  cache = std::move(b);
  return *cache;
}

Outcome benchmark_knn(int jobs, Artifacts*) {
  auto dir = benchmark_dir();
  if (!dir) return skip("BOOSTFREQ_BENCHMARK_DIR not set; needs the 99-novel benchmark corpus");
  const auto& b = load_benchmark(*dir, jobs);
  bf::GridOptions opt;
  opt.mfw_list = bf::default_mfw_list();
  for (std::size_t n : bf::default_background_list()) opt.backgrounds.push_back(static_cast<double>(n));
  opt.measures = {bf::DistanceMeasure::cosine_delta, bf::DistanceMeasure::manhattan};
  opt.jobs = jobs;
  auto depth = std::min<std::size_t>(10000, b.model.size() - 1);
  std::erase_if(opt.backgrounds, [&](double n) { return n > static_cast<double>(depth); });
  auto targets = bf::top_words(b.dtm, opt.mfw_list.back());
  auto table = bf::neighbor_table(b.model, targets, depth, jobs);
  auto grids = bf::grid_search(b.dtm, b.labels, table, opt);
  auto cos = bf::best_scores(grids[0]), man = bf::best_scores(grids[1]);
  const bool ok = std::abs(cos.baseline_f1 - 0.908) <= 0.03 && cos.enhanced_f1 - cos.baseline_f1 >= 0.03 &&
                  cos.enhanced_background <= 100 && man.enhanced_f1 - man.baseline_f1 >= 0.05;
  const std::string d = "cosine-delta baseline " + fmt(cos.baseline_f1) + " (want 0.908 +- 0.03), enhanced " +
                        fmt(cos.enhanced_f1) + " at n = " + bf::format_double(cos.enhanced_background) +
                        "; manhattan " + fmt(man.baseline_f1) + " -> " + fmt(man.enhanced_f1);
  return ok ? pass(d) : fail(d);
}

Outcome benchmark_radius(int jobs, Artifacts*) {
  auto dir = benchmark_dir();
  if (!dir) return skip("BOOSTFREQ_BENCHMARK_DIR not set; needs the 99-novel benchmark corpus");
  const auto& b = load_benchmark(*dir, jobs);
  bf::GridOptions opt;
  opt.mfw_list = bf::default_mfw_list();
  for (double t : bf::default_radius_list())
    if (t <= 0.3) opt.backgrounds.push_back(t);
  opt.measures = {bf::DistanceMeasure::cosine_delta};
  opt.jobs = jobs;
  auto grids = bf::grid_search(b.dtm, b.labels, b.model, opt);
  const auto& g = grids.front();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.axis_mfw.size(); ++i)
    for (std::size_t j = 0; j < g.axis_background.size(); ++j)
      worst = std::max(worst, std::abs(g.cell(i, j).f1 - g.baseline[i].f1));
  const std::string d = "max |F1 - baseline| at thresholds <= 0.3: " + fmt(worst) + " (want <= 0.02)";
  return worst <= 0.02 ? pass(d) : fail(d);
}

// 8. Determinism: rerun 1-5 serially and in parallel and compare the bytes
// they write.

using Check = Outcome (*)(int, Artifacts*);

Outcome determinism(int, Artifacts*);

struct Criterion {
  int id;
  const char* title;
  Check run;
  double budget_seconds;  // 0: no limit
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "full background equals classical frequencies", full_background, 10},
      {2, "on/upon replication", on_upon, 5},
      {3, "reference routine equivalence", reference_equivalence, 30},
      {4, "classifier oracle", classifier, 0},
      {5, "synthetic end to end", synthetic, 120},
      {6, "benchmark replication", benchmark_knn, 0},
      {7, "radius sanity", benchmark_radius, 0},
      {8, "determinism", determinism, 0},
  };
  return all;
}

Outcome determinism(int, Artifacts*) {
  bf::testing::TempDir dir;
  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const auto& c : criteria()) {
    if (c.id > 5) continue;
    std::vector<fs::path> files;
    bool skipped = false;
    for (int jobs : {1, 1, 4}) {
      Artifacts art;
      if (c.run(jobs, &art).status == Status::skip) {
        skipped = true;
        break;
      }
      auto path = dir.write("c" + std::to_string(c.id) + "_" + std::to_string(files.size()) + ".out", art.text);
      files.push_back(path);
    }
    if (skipped) continue;
    ++compared;
    const auto first = bf::testing::slurp(files[0]);
    for (std::size_t k = 1; k < files.size(); ++k)
      if (bf::testing::slurp(files[k]) != first) {
        differing.push_back(std::to_string(c.id));
        break;
      }
  }
  std::string d = std::to_string(compared) + " criteria rerun with jobs 1, 1, 4";
  if (differing.empty()) return pass(d + "; output files identical");
  std::string list;
  for (const auto& s : differing) list += (list.empty() ? "" : ", ") + s;
  return fail(d + "; differing output for criteria " + list);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    try {
      selected.push_back(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion...]\n";
      return 2;
    }
  }
  if (selected.empty())
    for (const auto& c : criteria()) selected.push_back(c.id);

  bf::set_warning_sink([](std::string_view) {});
  int failed = 0, skipped = 0;
  for (int id : selected) {
    auto it = std::find_if(criteria().begin(), criteria().end(), [&](const Criterion& c) { return c.id == id; });
    if (it == criteria().end()) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->run(1, nullptr);
    } catch (const std::exception& e) {
      o = fail(std::string("error: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt(seconds, 2) + " s";
    if (o.status == Status::pass && it->budget_seconds > 0 && seconds > it->budget_seconds) {
      o.status = Status::fail;
      timing += ", over the " + fmt(it->budget_seconds, 0) + " s budget";
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::cout << tag << "  criterion " << id << " (" << it->title << "): " << o.detail << " [" << timing << "]"
              << std::endl;
    failed += o.status == Status::fail;
    skipped += o.status == Status::skip;
  }
  if (failed) return 1;
  return skipped == static_cast<int>(selected.size()) ? 77 : 0;
}
