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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace boostfreq {

/// Tokenizer rules. The default splits on every character outside the
/// Unicode letter categories and lowercases, so "Don't" becomes "don", "t".
struct TokenizerConfig {
  bool lowercase = true;
  // Keep an apostrophe (' or U+2019) between two letters inside the word.
  bool keep_apostrophes = false;
  // Keep a hyphen between two letters inside the word.
  bool keep_hyphens = false;

  friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& rules = {});

/// One text of the corpus with its class label. Build with make_document so
/// that total_tokens stays equal to the sum of token_counts.
struct Document {
  std::string id;
  std::string author;
  std::unordered_map<std::string, std::uint64_t> token_counts;
  std::uint64_t total_tokens = 0;
};

Document make_document(std::string id, std::string author, std::span<const std::string> tokens);

/// Tokenized text of a single corpus file, kept in reading order for
/// embedding training.
struct CorpusText {
  std::string id;
  std::string author;
  std::vector<std::string> tokens;
};

/// Class label from a file stem `<Author>_<Title>`; throws DataError when the
/// stem has no underscore or an empty author part.
std::string author_from_stem(std::string_view stem);

/// Reads every `*.txt` file of `directory`, ordered by file name.
std::vector<CorpusText> read_corpus_texts(const std::filesystem::path& directory,
                                          const TokenizerConfig& rules = {}, int jobs = 1);

std::vector<Document> build_corpus(const std::filesystem::path& directory,
                                   const TokenizerConfig& rules = {}, int jobs = 1);

std::vector<Document> to_documents(std::span<const CorpusText> texts);

/// Documents × vocabulary table of raw counts. The vocabulary holds every
/// observed type, sorted by descending corpus total with lexicographic
/// tie-breaking.
class DocTermMatrix {
 public:
  struct Entry {
    std::uint32_t doc;
    std::uint32_t count;
  };

  /// `counts` is row-major |doc_ids| × |vocab|. Validates uniqueness and the
  /// vocabulary ordering; throws DataError on violation.
  DocTermMatrix(std::vector<std::string> doc_ids, std::vector<std::string> vocab,
                std::vector<std::uint32_t> counts);

  std::size_t num_docs() const { return doc_ids_.size(); }
  std::size_t vocab_size() const { return vocab_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<std::string>& vocab() const { return vocab_; }

  std::uint32_t count(std::size_t doc, std::size_t word) const {
    return counts_[doc * vocab_.size() + word];
  }
  std::span<const std::uint32_t> row(std::size_t doc) const {
    return {counts_.data() + doc * vocab_.size(), vocab_.size()};
  }
  /// Nonzero cells of one vocabulary column, ordered by document.
  std::span<const Entry> column(std::size_t word) const {
    return {entries_.data() + column_start_[word],
            column_start_[word + 1] - column_start_[word]};
  }
  std::uint64_t corpus_total(std::size_t word) const { return corpus_totals_[word]; }
  std::uint64_t doc_total(std::size_t doc) const { return doc_totals_[doc]; }

  std::optional<std::size_t> word_index(std::string_view word) const;
  std::optional<std::size_t> doc_index(std::string_view id) const;

 private:
  std::vector<std::string> doc_ids_;
  std::vector<std::string> vocab_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> corpus_totals_;
  std::vector<std::uint64_t> doc_totals_;
  std::vector<std::size_t> column_start_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> word_lookup_;
  std::unordered_map<std::string, std::size_t> doc_lookup_;
};

DocTermMatrix build_dtm(std::span<const Document> documents);

/// The k most frequent words; throws UsageError when k exceeds the vocabulary.
std::vector<std::string> top_words(const DocTermMatrix& dtm, std::size_t k);

// TSV layout: header row `doc_id<TAB>vocab...`, then one row per document.
void write_dtm_tsv(const DocTermMatrix& dtm, std::ostream& out);
void write_dtm_tsv(const DocTermMatrix& dtm, const std::filesystem::path& path);
DocTermMatrix read_dtm_tsv(const std::filesystem::path& path);

struct ManifestRow {
  std::string id;
  std::string author;
  std::uint64_t total_tokens = 0;
};

// `doc_id<TAB>author<TAB>total_tokens`, one row per document.
void write_manifest_tsv(std::span<const Document> documents, const std::filesystem::path& path);
std::vector<ManifestRow> read_manifest_tsv(const std::filesystem::path& path);

}  // namespace boostfreq
