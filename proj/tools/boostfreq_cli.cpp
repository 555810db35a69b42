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

// boostfreq command-line pipeline:
//   ingest -> train-vectors -> neighbors -> freqs / grid -> report
// Every stage reads and writes plain TSV/CSV artifacts in the output directory.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "boostfreq/classify.hpp"
#include "boostfreq/config.hpp"
#include "boostfreq/corpus.hpp"
#include "boostfreq/diagnostics.hpp"
#include "boostfreq/error.hpp"
#include "boostfreq/evaluate.hpp"
#include "boostfreq/frequencies.hpp"
#include "boostfreq/report.hpp"
#include "boostfreq/semantics.hpp"
#include "boostfreq/text_format.hpp"

namespace fs = std::filesystem;
using namespace boostfreq;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

// Flag values are kept as text and applied through the config parser, so a
// flag and the matching config key accept exactly the same syntax.
struct Overrides {
  std::string config_path;
  bool print_config = false;
  std::vector<std::pair<CLI::Option*, std::string>> options;  // option, config key
  std::map<std::string, std::string> values;
  std::vector<std::pair<CLI::Option*, std::pair<std::string, std::string>>> flags;

  void option(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    options.emplace_back(app->add_option(name, values[key], help), key);
  }
  void flag(CLI::App* app, const std::string& name, const std::string& key, const std::string& value,
            const std::string& help) {
    flags.push_back({app->add_flag(name, help), {key, value}});
  }

  RunConfig resolve() const {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& [opt, key] : options)
      if (opt->count() > 0) apply_setting(config, key, values.at(key));
    for (const auto& [opt, kv] : flags)
      if (opt->count() > 0) apply_setting(config, kv.first, kv.second);
    validate(config);
    return config;
  }
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path, "Configuration file (key = value lines); flags override it")
      ->check(CLI::ExistingFile);
  app->add_flag("--print-config", o.print_config, "Print the effective configuration and exit");
  o.option(app, "-o,--output-dir", "output_dir",
           std::string("Artifact directory (default: $") + kOutputDirEnv + " or ./boostfreq-out)");
  o.option(app, "-j,--jobs", "jobs", "Worker threads; results do not depend on this");
  o.option(app, "--seed", "seed", "Seed for the SVD initialization and random folds");
}

void add_corpus_options(CLI::App* app, Overrides& o) {
  o.option(app, "--corpus", "corpus_dir", "Directory of <Author>_<Title>.txt files");
  o.flag(app, "--keep-apostrophes", "keep_apostrophes", "true", "Keep word-internal apostrophes");
  o.flag(app, "--keep-hyphens", "keep_hyphens", "true", "Keep word-internal hyphens");
  o.flag(app, "--no-lowercase", "lowercase", "false", "Do not lowercase tokens");
}

void add_training_options(CLI::App* app, Overrides& o) {
  o.option(app, "--dims", "train_dims", "Embedding dimensions for the built-in trainer");
  o.option(app, "--window", "train_window", "Co-occurrence window radius");
  o.option(app, "--min-count", "train_min_count", "Minimum corpus count of embedded words");
}

struct Paths {
  fs::path dir;
  fs::path dtm() const { return dir / "dtm.tsv"; }
  fs::path manifest() const { return dir / "manifest.tsv"; }
  fs::path classes() const { return dir / "classes.tsv"; }
  fs::path vectors() const { return dir / "vectors.txt"; }
  fs::path neighbors() const { return dir / "neighbors.tsv"; }
  fs::path grid(BackgroundMode m) const { return dir / ("grid_" + std::string(to_string(m)) + ".csv"); }
  fs::path gain(BackgroundMode m) const { return dir / ("gain_" + std::string(to_string(m)) + ".csv"); }
  fs::path summary(BackgroundMode m) const { return dir / ("summary_" + std::string(to_string(m)) + ".csv"); }
  fs::path svg(const std::string& kind, BackgroundMode m, DistanceMeasure d) const {
    return dir / (kind + "_" + std::string(to_string(m)) + "_" + std::string(to_string(d)) + ".svg");
  }
};

Paths prepare_output(const RunConfig& config) {
  Paths p{resolved_output_dir(config)};
  fs::create_directories(p.dir);
  return p;
}

void require_file(const fs::path& path, const std::string& producer) {
  if (!fs::exists(path))
    throw DataError(path.string() + " not found; run `boostfreq " + producer + "` first");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::vector<LabeledDoc> load_labels(const Paths& paths) {
  require_file(paths.manifest(), "ingest");
  std::vector<LabeledDoc> labels;
  for (auto& row : read_manifest_tsv(paths.manifest())) labels.push_back({row.id, row.author});
  return labels;
}

std::vector<std::vector<std::string>> corpus_streams(const RunConfig& config) {
  if (config.corpus_dir.empty()) throw UsageError("--corpus is required");
  auto texts = read_corpus_texts(config.corpus_dir, config.tokenizer, config.jobs);
  std::vector<std::vector<std::string>> streams;
  for (auto& t : texts) streams.push_back(std::move(t.tokens));
  return streams;
}

VectorModel train_from_config(const RunConfig& config) {
  PpmiSvdOptions options;
  options.dims = config.train_dims;
  options.window = config.train_window;
  options.min_count = config.train_min_count;
  options.seed = config.seed;
  return train_ppmi_svd(corpus_streams(config), options);
}

// "train" means the trainer's artifact, produced on demand.
VectorModel resolve_vectors(const RunConfig& config, const Paths& paths) {
  if (config.vectors != "train") return load_vectors(config.vectors);
  if (fs::exists(paths.vectors())) return load_vectors(paths.vectors());
  std::cerr << "no " << paths.vectors().string() << "; training vectors from the corpus\n";
  auto model = train_from_config(config);
  save_vectors(model, paths.vectors());
  return model;
}

void cmd_ingest(const RunConfig& config) {
  if (config.corpus_dir.empty()) throw UsageError("--corpus is required");
  auto paths = prepare_output(config);
  auto documents = build_corpus(config.corpus_dir, config.tokenizer, config.jobs);
  auto dtm = build_dtm(documents);
  write_dtm_tsv(dtm, paths.dtm());
  write_manifest_tsv(documents, paths.manifest());

  std::map<std::string, std::size_t> classes;
  for (const auto& d : documents) ++classes[d.author];
  std::string listing = "author\tdocuments\n";
  for (const auto& [author, n] : classes) listing += author + '\t' + std::to_string(n) + '\n';
  write_text(paths.classes(), listing);

  std::cout << documents.size() << " documents, " << classes.size() << " classes, " << dtm.vocab_size()
            << " word types -> " << paths.dtm().string() << '\n';
}

void cmd_train_vectors(const RunConfig& config) {
  auto paths = prepare_output(config);
  auto model = train_from_config(config);
  save_vectors(model, paths.vectors());
  std::cout << model.size() << " words x " << model.dims() << " dims -> " << paths.vectors().string() << '\n';
}

void cmd_neighbors(const RunConfig& config) {
  auto paths = prepare_output(config);
  require_file(paths.dtm(), "ingest");
  auto dtm = read_dtm_tsv(paths.dtm());
  auto model = resolve_vectors(config, paths);
  std::size_t count = config.neighbor_targets;
  if (count > dtm.vocab_size()) {
    warn("neighbor_targets " + std::to_string(count) + " exceeds the vocabulary; using all " +
         std::to_string(dtm.vocab_size()) + " words");
    count = dtm.vocab_size();
  }
  auto targets = top_words(dtm, count);
  auto table = neighbor_table(model, targets, config.neighbor_depth, config.jobs);
  write_neighbor_table_tsv(table, paths.neighbors());
  std::cout << table.targets.size() << " targets x depth " << table.depth << " -> "
            << paths.neighbors().string() << '\n';
}

struct FreqsArgs {
  std::string kind = "enhanced";
  std::size_t mfw = 100;
  std::size_t background = 10;
  double threshold = 0.5;
  std::string out;
};

void cmd_freqs(const RunConfig& config, const FreqsArgs& args) {
  auto paths = prepare_output(config);
  require_file(paths.dtm(), "ingest");
  auto dtm = read_dtm_tsv(paths.dtm());
  auto targets = top_words(dtm, args.mfw);

  FrequencyMatrix freqs;
  std::string name;
  if (args.kind == "classical") {
    freqs = classical_frequencies(dtm, targets);
    name = "freqs_classical_mfw" + std::to_string(args.mfw) + ".tsv";
  } else if (args.kind == "enhanced") {
    require_file(paths.neighbors(), "neighbors");
    auto table = read_neighbor_table_tsv(paths.neighbors());
    NeighborTable subset{{}, {}, table.depth};
    for (const auto& t : targets) {
      auto it = std::find(table.targets.begin(), table.targets.end(), t);
      if (it == table.targets.end()) throw DataError("neighbor table has no row for '" + t + "'");
      subset.targets.push_back(t);
      subset.neighbors.push_back(table.neighbors[static_cast<std::size_t>(it - table.targets.begin())]);
    }
    auto selection = config.compat_reference_order ? BackgroundSelection::truncate_then_filter
                                                  : BackgroundSelection::filter_then_truncate;
    freqs = enhanced_frequencies(dtm, subset, args.background, selection, config.jobs);
    name = "freqs_enhanced_mfw" + std::to_string(args.mfw) + "_n" + std::to_string(args.background) + ".tsv";
  } else if (args.kind == "radius") {
    auto model = resolve_vectors(config, paths);
    freqs = enhanced_frequencies_radius(dtm, model, targets, args.threshold, config.jobs);
    name = "freqs_radius_mfw" + std::to_string(args.mfw) + "_t" + format_double(args.threshold) + ".tsv";
  } else {
    throw UsageError("unknown frequency kind '" + args.kind + "'");
  }
  fs::path out = args.out.empty() ? paths.dir / name : fs::path(args.out);
  write_frequency_tsv(freqs, out);
  std::cout << freqs.rows() << " documents x " << freqs.cols() << " features -> " << out.string() << '\n';
}

void write_grid_outputs(const Paths& paths, BackgroundMode mode, const std::vector<ResultGrid>& grids) {
  std::vector<GainMap> gains;
  for (const auto& g : grids) gains.push_back(gain_map(g));
  write_results_csv(grids, paths.grid(mode));
  write_gain_csv(gains, paths.gain(mode));
  for (std::size_t k = 0; k < grids.size(); ++k) {
    write_text(paths.svg("heatmap", mode, grids[k].measure), render_heatmap_svg(grids[k]));
    write_text(paths.svg("gain", mode, grids[k].measure), render_gain_svg(gains[k]));
  }
}

void print_summary(const std::vector<ResultGrid>& grids, std::ostream& out) {
  out << "measure         baseline F1 (mfw)    enhanced F1 (mfw, background)   gain\n";
  for (const auto& g : grids) {
    auto b = best_scores(g);
    char line[160];
    std::snprintf(line, sizeof line, "%-15s %.4f (%4zu)        %.4f (%4zu, %8s)          %+.4f\n",
                  std::string(to_string(b.measure)).c_str(), b.baseline_f1, b.baseline_mfw, b.enhanced_f1,
                  b.enhanced_mfw, format_double(b.enhanced_background).c_str(), b.enhanced_f1 - b.baseline_f1);
    out << line;
  }
}

void cmd_grid(const RunConfig& config, BackgroundMode mode) {
  auto paths = prepare_output(config);
  require_file(paths.dtm(), "ingest");
  auto dtm = read_dtm_tsv(paths.dtm());
  auto labels = load_labels(paths);

  GridOptions options;
  options.mfw_list = config.mfw_list;
  options.measures = config.measures;
  options.folds = FoldScheme{config.fold_mode, config.fold_iterations, config.seed};
  options.scaling = config.scaling;
  options.selection = config.compat_reference_order ? BackgroundSelection::truncate_then_filter
                                                   : BackgroundSelection::filter_then_truncate;
  options.jobs = config.jobs;

  std::vector<ResultGrid> grids;
  if (mode == BackgroundMode::knn) {
    require_file(paths.neighbors(), "neighbors");
    auto table = read_neighbor_table_tsv(paths.neighbors());
    options.backgrounds.assign(config.background_list.begin(), config.background_list.end());
    grids = grid_search(dtm, labels, table, options);
  } else {
    auto model = resolve_vectors(config, paths);
    options.backgrounds = config.radius_list;
    grids = grid_search(dtm, labels, model, options);
  }

  std::size_t failed = 0;
  for (const auto& g : grids) {
    for (std::size_t i = 0; i < g.axis_mfw.size(); ++i) {
      for (std::size_t j = 0; j < g.axis_background.size(); ++j) {
        const auto& c = g.cell(i, j);
        if (!c.failed()) continue;
        ++failed;
        std::cerr << "cell " << to_string(g.measure) << " mfw=" << g.axis_mfw[i]
                  << " background=" << format_double(g.axis_background[j]) << " failed: " << c.error << '\n';
      }
    }
  }
  write_grid_outputs(paths, mode, grids);
  print_summary(grids, std::cout);
  std::cout << grids.size() << " grid(s) of " << options.mfw_list.size() << " x " << options.backgrounds.size()
            << " cells";
  if (failed) std::cout << ", " << failed << " failed";
  std::cout << " -> " << paths.grid(mode).string() << '\n';
}

void cmd_report(const RunConfig& config, BackgroundMode mode) {
  auto paths = prepare_output(config);
  require_file(paths.grid(mode), std::string("grid --mode ") + std::string(to_string(mode)));
  auto grids = read_results_csv(paths.grid(mode));
  write_grid_outputs(paths, mode, grids);
  std::ofstream summary(paths.summary(mode), std::ios::binary);
  if (!summary) throw DataError("cannot write " + paths.summary(mode).string());
  write_summary_csv(grids, summary);
  print_summary(grids, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boostfreq: relative word frequencies normalized by semantic neighbors, "
               "evaluated with Delta-family authorship attribution"};
  app.require_subcommand(1);

  Overrides ingest_o, train_o, neighbors_o, freqs_o, grid_o, report_o;

  auto* ingest = app.add_subcommand("ingest", "Tokenize a corpus directory and write dtm.tsv and manifest.tsv");
  add_common(ingest, ingest_o);
  add_corpus_options(ingest, ingest_o);

  auto* train = app.add_subcommand("train-vectors", "Train PPMI+SVD word vectors on the corpus (vectors.txt)");
  add_common(train, train_o);
  add_corpus_options(train, train_o);
  add_training_options(train, train_o);

  auto* neighbors = app.add_subcommand("neighbors", "Build the semantic neighbor table (neighbors.tsv)");
  add_common(neighbors, neighbors_o);
  add_corpus_options(neighbors, neighbors_o);
  add_training_options(neighbors, neighbors_o);
  neighbors_o.option(neighbors, "--vectors", "vectors", "Vector file, or 'train' to use/produce vectors.txt");
  neighbors_o.option(neighbors, "--targets", "neighbor_targets", "Number of most frequent words to cover");
  neighbors_o.option(neighbors, "--depth", "neighbor_depth", "Neighbors kept per target");

  FreqsArgs freqs_args;
  auto* freqs = app.add_subcommand("freqs", "Write one frequency matrix (classical, enhanced or radius)");
  add_common(freqs, freqs_o);
  add_corpus_options(freqs, freqs_o);
  add_training_options(freqs, freqs_o);
  freqs->add_option("--kind", freqs_args.kind, "classical | enhanced | radius")
      ->check(CLI::IsMember({"classical", "enhanced", "radius"}))
      ->capture_default_str();
  freqs->add_option("--mfw", freqs_args.mfw, "Number of most frequent words")->capture_default_str();
  freqs->add_option("--background", freqs_args.background, "Neighbors per word (enhanced)")->capture_default_str();
  freqs->add_option("--threshold", freqs_args.threshold, "Cosine similarity threshold (radius)")
      ->check(CLI::Range(-1.0, 1.0))
      ->capture_default_str();
  freqs->add_option("--out", freqs_args.out, "Output file (default: inside the output directory)");
  freqs_o.option(freqs, "--vectors", "vectors", "Vector file, or 'train' (radius kind)");
  freqs_o.flag(freqs, "--no-compat", "compat_reference_order", "false",
               "Filter absent neighbors before truncating to n");

  std::string grid_mode = "knn", report_mode = "knn";
  auto* grid = app.add_subcommand("grid", "Grid search over MFW x background; CSV results and SVG heatmaps");
  add_common(grid, grid_o);
  add_corpus_options(grid, grid_o);
  add_training_options(grid, grid_o);
  grid->add_option("--mode", grid_mode, "knn | radius")->check(CLI::IsMember({"knn", "radius"}))->capture_default_str();
  grid_o.option(grid, "--vectors", "vectors", "Vector file, or 'train' (radius mode)");
  grid_o.option(grid, "--mfw-list", "mfw_list", "Comma-separated MFW counts");
  grid_o.option(grid, "--background-list", "background_list", "Comma-separated neighbor counts (knn)");
  grid_o.option(grid, "--radius-list", "radius_list", "Comma-separated similarity thresholds (radius)");
  grid_o.option(grid, "--measures", "measures", "Comma-separated: cosine-delta,burrows-delta,eder-delta,manhattan");
  grid_o.option(grid, "--fold-mode", "fold_mode", "rotation | random");
  grid_o.option(grid, "--iterations", "fold_iterations", "Iterations for random folds");
  grid_o.option(grid, "--scaling", "scaling", "z-score reference: train | combined");
  grid_o.flag(grid, "--no-compat", "compat_reference_order", "false",
              "Filter absent neighbors before truncating to n");

  auto* report = app.add_subcommand("report", "Summarize a grid CSV and re-render its heatmaps");
  add_common(report, report_o);
  report->add_option("--mode", report_mode, "knn | radius")->check(CLI::IsMember({"knn", "radius"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    struct Entry {
      CLI::App* cmd;
      Overrides* overrides;
    };
    for (auto [cmd, o] : {Entry{ingest, &ingest_o}, Entry{train, &train_o}, Entry{neighbors, &neighbors_o},
                          Entry{freqs, &freqs_o}, Entry{grid, &grid_o}, Entry{report, &report_o}}) {
      if (!cmd->parsed()) continue;
      RunConfig config = o->resolve();
      if (o->print_config) {
        std::cout << to_text(config);
        return kOk;
      }
      if (cmd == ingest) cmd_ingest(config);
      else if (cmd == train) cmd_train_vectors(config);
      else if (cmd == neighbors) cmd_neighbors(config);
      else if (cmd == freqs) cmd_freqs(config, freqs_args);
      else if (cmd == grid) cmd_grid(config, parse_background_mode(grid_mode));
      else cmd_report(config, parse_background_mode(report_mode));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
