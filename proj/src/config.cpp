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

#include "boostfreq/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "boostfreq/error.hpp"
#include "boostfreq/text_format.hpp"

namespace boostfreq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    auto comma = s.find(',');
    auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw UsageError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string_view::npos)
    bad_value(key, value);
  try {
    return std::stoull(std::string(value));
  } catch (const std::exception&) {
    bad_value(key, value);
  }
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

template <typename T>
std::string join(const std::vector<T>& items, auto format) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += format(items[i]);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> default_mfw_list() {
  std::vector<std::size_t> out;
  for (std::size_t k = 100; k <= 1000; k += 100) out.push_back(k);
  return out;
}

std::vector<std::size_t> default_background_list() {
  return {1, 2, 3, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
}

std::vector<double> default_radius_list() {
  std::vector<double> out;
  for (int k = 0; k <= 36; ++k) out.push_back(static_cast<double>(90 - 5 * k) / 100.0);
  return out;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "corpus_dir") {
    c.corpus_dir = value;
  } else if (key == "vectors") {
    c.vectors = value;
  } else if (key == "train_dims") {
    c.train_dims = parse_unsigned(key, value);
  } else if (key == "train_window") {
    c.train_window = parse_unsigned(key, value);
  } else if (key == "train_min_count") {
    c.train_min_count = parse_unsigned(key, value);
  } else if (key == "neighbor_targets") {
    c.neighbor_targets = parse_unsigned(key, value);
  } else if (key == "neighbor_depth") {
    c.neighbor_depth = parse_unsigned(key, value);
  } else if (key == "mfw_list" || key == "background_list") {
    std::vector<std::size_t> list;
    for (auto item : split_list(value)) list.push_back(parse_unsigned(key, item));
    (key == "mfw_list" ? c.mfw_list : c.background_list) = std::move(list);
  } else if (key == "radius_list") {
    c.radius_list.clear();
    for (auto item : split_list(value)) {
      auto v = parse_double(item);
      if (!v) bad_value(key, item);
      c.radius_list.push_back(*v);
    }
  } else if (key == "measures") {
    c.measures.clear();
    for (auto item : split_list(value)) c.measures.push_back(parse_measure(item));
  } else if (key == "fold_mode") {
    if (value == "rotation") c.fold_mode = FoldMode::deterministic_rotation;
    else if (value == "random") c.fold_mode = FoldMode::random_stratified;
    else bad_value(key, value);
  } else if (key == "fold_iterations") {
    c.fold_iterations = parse_unsigned(key, value);
  } else if (key == "seed") {
    c.seed = parse_unsigned(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "compat_reference_order") {
    c.compat_reference_order = parse_bool(key, value);
  } else if (key == "scaling") {
    if (value == "train") c.scaling = ScalingReference::training_set;
    else if (value == "combined") c.scaling = ScalingReference::combined;
    else bad_value(key, value);
  } else if (key == "lowercase") {
    c.tokenizer.lowercase = parse_bool(key, value);
  } else if (key == "keep_apostrophes") {
    c.tokenizer.keep_apostrophes = parse_bool(key, value);
  } else if (key == "keep_hyphens") {
    c.tokenizer.keep_hyphens = parse_bool(key, value);
  } else if (key == "jobs") {
    c.jobs = static_cast<int>(parse_unsigned(key, value));
  } else {
    throw UsageError("unknown configuration key '" + std::string(key) + "'");
  }
}

std::string to_text(const RunConfig& c) {
  auto num = [](auto v) { return std::to_string(v); };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  std::ostringstream out;
  out << "# boostfreq run configuration\n";
  out << "corpus_dir = " << c.corpus_dir << '\n';
  out << "vectors = " << c.vectors << '\n';
  out << "train_dims = " << c.train_dims << '\n';
  out << "train_window = " << c.train_window << '\n';
  out << "train_min_count = " << c.train_min_count << '\n';
  out << "neighbor_targets = " << c.neighbor_targets << '\n';
  out << "neighbor_depth = " << c.neighbor_depth << '\n';
  out << "mfw_list = " << join(c.mfw_list, num) << '\n';
  out << "background_list = " << join(c.background_list, num) << '\n';
  out << "radius_list = " << join(c.radius_list, [](double v) { return format_double(v); }) << '\n';
  out << "measures = " << join(c.measures, [](DistanceMeasure m) { return std::string(to_string(m)); }) << '\n';
  out << "fold_mode = " << (c.fold_mode == FoldMode::deterministic_rotation ? "rotation" : "random") << '\n';
  out << "fold_iterations = " << c.fold_iterations << '\n';
  out << "seed = " << c.seed << '\n';
  out << "output_dir = " << c.output_dir << '\n';
  out << "compat_reference_order = " << flag(c.compat_reference_order) << '\n';
  out << "scaling = " << (c.scaling == ScalingReference::training_set ? "train" : "combined") << '\n';
  out << "lowercase = " << flag(c.tokenizer.lowercase) << '\n';
  out << "keep_apostrophes = " << flag(c.tokenizer.keep_apostrophes) << '\n';
  out << "keep_hyphens = " << flag(c.tokenizer.keep_hyphens) << '\n';
  out << "jobs = " << c.jobs << '\n';
  return out.str();
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const UsageError& e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string resolved_output_dir(const RunConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "boostfreq-out";
}

void validate(const RunConfig& c) {
  if (c.mfw_list.empty()) throw UsageError("mfw_list is empty");
  if (c.background_list.empty()) throw UsageError("background_list is empty");
  if (c.radius_list.empty()) throw UsageError("radius_list is empty");
  if (c.measures.empty()) throw UsageError("measures is empty");
  if (c.train_dims == 0 || c.train_window == 0) throw UsageError("train_dims and train_window must be positive");
  if (c.neighbor_targets == 0 || c.neighbor_depth == 0)
    throw UsageError("neighbor_targets and neighbor_depth must be positive");
  for (auto k : c.mfw_list)
    if (k == 0) throw UsageError("mfw_list entries must be positive");
  for (auto b : c.background_list)
    if (b == 0) throw UsageError("background_list entries must be positive");
  for (auto r : c.radius_list)
    if (!(r >= -1.0 && r <= 1.0)) throw UsageError("radius_list entries must lie in [-1, 1]");
  if (c.fold_iterations == 0) throw UsageError("fold_iterations must be positive");
}

}  // namespace boostfreq
