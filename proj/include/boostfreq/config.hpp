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
#include <string>
#include <string_view>
#include <vector>

#include "boostfreq/classify.hpp"
#include "boostfreq/corpus.hpp"
#include "boostfreq/evaluate.hpp"
#include "boostfreq/frequencies.hpp"

namespace boostfreq {

inline constexpr const char* kOutputDirEnv = "BOOSTFREQ_OUTPUT_DIR";

std::vector<std::size_t> default_mfw_list();
std::vector<std::size_t> default_background_list();
/// 0.9, 0.85, ..., -0.9 (37 thresholds).
std::vector<double> default_radius_list();

/// Every knob of a pipeline run. Serializes to `key = value` lines; lists are
/// comma-separated.
struct RunConfig {
  std::string corpus_dir;
  std::string vectors = "train";  // a vector file, or "train" for the built-in trainer
  std::size_t train_dims = 100;
  std::size_t train_window = 5;
  std::uint64_t train_min_count = 1;
  std::size_t neighbor_targets = 1000;
  std::size_t neighbor_depth = 10000;
  std::vector<std::size_t> mfw_list = default_mfw_list();
  std::vector<std::size_t> background_list = default_background_list();
  std::vector<double> radius_list = default_radius_list();
  std::vector<DistanceMeasure> measures{kAllMeasures.begin(), kAllMeasures.end()};
  FoldMode fold_mode = FoldMode::deterministic_rotation;
  std::size_t fold_iterations = 3;
  std::uint64_t seed = 1;
  std::string output_dir;  // empty: $BOOSTFREQ_OUTPUT_DIR, else "boostfreq-out"
  bool compat_reference_order = true;
  ScalingReference scaling = ScalingReference::training_set;
  TokenizerConfig tokenizer;
  int jobs = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string to_text(const RunConfig& config);
/// Starts from defaults and applies every `key = value` line. Unknown keys and
/// malformed values throw UsageError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Applies one `key = value` setting; shared by the config parser and the CLI.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

std::string resolved_output_dir(const RunConfig& config);

/// Empty lists or nonsensical values throw UsageError.
void validate(const RunConfig& config);

}  // namespace boostfreq
