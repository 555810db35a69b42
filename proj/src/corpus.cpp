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

#include "boostfreq/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "boostfreq/error.hpp"
#include "boostfreq/parallel.hpp"

namespace boostfreq {
namespace fs = std::filesystem;

namespace {

// Decodes the code point at `pos`; malformed bytes decode to a negative value
// and are treated as separators.
UChar32 decode_at(std::string_view text, std::size_t& pos) {
  UChar32 c;
  auto i = static_cast<int32_t>(pos);
  U8_NEXT(reinterpret_cast<const uint8_t*>(text.data()), i, static_cast<int32_t>(text.size()), c);
  pos = static_cast<std::size_t>(i);
  return c;
}

bool is_letter(UChar32 c) { return c >= 0 && u_isalpha(c); }

bool is_apostrophe(UChar32 c) { return c == U'\'' || c == 0x2019; }

bool is_hyphen(UChar32 c) { return c == U'-' || c == 0x2010; }

void append_utf8(std::string& out, UChar32 c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error while reading corpus file: " + path.string());
  return std::move(buf).str();
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    cells.emplace_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cells;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& rules) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    UChar32 c = decode_at(text, pos);
    if (is_letter(c)) {
      append_utf8(current, rules.lowercase ? u_tolower(c) : c);
      continue;
    }
    if (!current.empty() && ((rules.keep_apostrophes && is_apostrophe(c)) ||
                             (rules.keep_hyphens && is_hyphen(c)))) {
      std::size_t peek = pos;
      if (peek < text.size() && is_letter(decode_at(text, peek))) {
        append_utf8(current, c);
        continue;
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Document make_document(std::string id, std::string author, std::span<const std::string> tokens) {
  Document doc{std::move(id), std::move(author), {}, tokens.size()};
  for (const auto& t : tokens) ++doc.token_counts[t];
  return doc;
}

std::string author_from_stem(std::string_view stem) {
  auto underscore = stem.find('_');
  if (underscore == std::string_view::npos)
    throw DataError("file name '" + std::string(stem) +
                    "' has no underscore; expected <Author>_<Title>.txt");
  if (underscore == 0)
    throw DataError("file name '" + std::string(stem) + "' has an empty author prefix");
  return std::string(stem.substr(0, underscore));
}

std::vector<CorpusText> read_corpus_texts(const fs::path& directory, const TokenizerConfig& rules,
                                          int jobs) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec))
    throw DataError("corpus directory does not exist: " + directory.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (files.empty()) throw DataError("no .txt files in corpus directory: " + directory.string());

  std::vector<CorpusText> texts(files.size());
  // Labels are checked up front so a bad name fails before any tokenizing.
  for (std::size_t i = 0; i < files.size(); ++i) {
    texts[i].id = files[i].stem().string();
    texts[i].author = author_from_stem(texts[i].id);
  }
  parallel_for(files.size(), jobs,
               [&](std::size_t i) { texts[i].tokens = tokenize(read_file(files[i]), rules); });
  return texts;
}

std::vector<Document> to_documents(std::span<const CorpusText> texts) {
  std::vector<Document> docs;
  docs.reserve(texts.size());
  for (const auto& t : texts) docs.push_back(make_document(t.id, t.author, t.tokens));
  return docs;
}

std::vector<Document> build_corpus(const fs::path& directory, const TokenizerConfig& rules,
                                   int jobs) {
  auto texts = read_corpus_texts(directory, rules, jobs);
  return to_documents(texts);
}

DocTermMatrix::DocTermMatrix(std::vector<std::string> doc_ids, std::vector<std::string> vocab,
                             std::vector<std::uint32_t> counts)
    : doc_ids_(std::move(doc_ids)), vocab_(std::move(vocab)), counts_(std::move(counts)) {
  const std::size_t n_docs = doc_ids_.size();
  const std::size_t n_words = vocab_.size();
  if (counts_.size() != n_docs * n_words)
    throw DataError("document-term matrix has " + std::to_string(counts_.size()) +
                    " cells, expected " + std::to_string(n_docs * n_words));

  for (std::size_t d = 0; d < n_docs; ++d) {
    if (!doc_lookup_.emplace(doc_ids_[d], d).second)
      throw DataError("duplicate document id: " + doc_ids_[d]);
  }
  for (std::size_t w = 0; w < n_words; ++w) {
    if (!word_lookup_.emplace(vocab_[w], w).second)
      throw DataError("duplicate vocabulary word: " + vocab_[w]);
  }

  corpus_totals_.assign(n_words, 0);
  doc_totals_.assign(n_docs, 0);
  std::vector<std::size_t> nonzero(n_words, 0);
  for (std::size_t d = 0; d < n_docs; ++d) {
    for (std::size_t w = 0; w < n_words; ++w) {
      auto c = counts_[d * n_words + w];
      corpus_totals_[w] += c;
      doc_totals_[d] += c;
      if (c != 0) ++nonzero[w];
    }
  }

  for (std::size_t w = 1; w < n_words; ++w) {
    bool ordered = corpus_totals_[w - 1] > corpus_totals_[w] ||
                   (corpus_totals_[w - 1] == corpus_totals_[w] && vocab_[w - 1] < vocab_[w]);
    if (!ordered)
      throw DataError("vocabulary is not sorted by descending frequency at word '" + vocab_[w] +
                      "'");
  }

  column_start_.assign(n_words + 1, 0);
  for (std::size_t w = 0; w < n_words; ++w) column_start_[w + 1] = column_start_[w] + nonzero[w];
  entries_.resize(column_start_.back());
  std::vector<std::size_t> fill(column_start_.begin(), column_start_.end() - 1);
  for (std::size_t d = 0; d < n_docs; ++d) {
    for (std::size_t w = 0; w < n_words; ++w) {
      auto c = counts_[d * n_words + w];
      if (c != 0) entries_[fill[w]++] = Entry{static_cast<std::uint32_t>(d), c};
    }
  }
}

std::optional<std::size_t> DocTermMatrix::word_index(std::string_view word) const {
  auto it = word_lookup_.find(std::string(word));
  if (it == word_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DocTermMatrix::doc_index(std::string_view id) const {
  auto it = doc_lookup_.find(std::string(id));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

DocTermMatrix build_dtm(std::span<const Document> documents) {
  if (documents.empty()) throw DataError("cannot build a document-term matrix from an empty corpus");

  std::unordered_map<std::string, std::uint64_t> totals;
  for (const auto& doc : documents)
    for (const auto& [word, count] : doc.token_counts) totals[word] += count;
  if (totals.empty()) throw DataError("corpus contains no tokens");

  std::vector<std::pair<std::string, std::uint64_t>> ranked(totals.begin(), totals.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  std::vector<std::string> vocab;
  vocab.reserve(ranked.size());
  std::unordered_map<std::string_view, std::size_t> index;
  for (auto& [word, total] : ranked) vocab.push_back(word);
  for (std::size_t w = 0; w < vocab.size(); ++w) index.emplace(vocab[w], w);

  std::vector<std::string> ids;
  std::vector<std::uint32_t> counts(documents.size() * vocab.size(), 0);
  for (std::size_t d = 0; d < documents.size(); ++d) {
    ids.push_back(documents[d].id);
    for (const auto& [word, count] : documents[d].token_counts) {
      if (count > std::numeric_limits<std::uint32_t>::max())
        throw DataError("count of '" + word + "' in " + documents[d].id + " overflows 32 bits");
      counts[d * vocab.size() + index.at(word)] = static_cast<std::uint32_t>(count);
    }
  }
  return DocTermMatrix(std::move(ids), std::move(vocab), std::move(counts));
}

std::vector<std::string> top_words(const DocTermMatrix& dtm, std::size_t k) {
  if (k == 0) throw UsageError("number of most frequent words must be positive");
  if (k > dtm.vocab_size())
    throw UsageError("requested " + std::to_string(k) + " most frequent words but the vocabulary has only " +
                     std::to_string(dtm.vocab_size()));
  return {dtm.vocab().begin(), dtm.vocab().begin() + static_cast<std::ptrdiff_t>(k)};
}

void write_dtm_tsv(const DocTermMatrix& dtm, std::ostream& out) {
  out << "doc_id";
  for (const auto& w : dtm.vocab()) out << '\t' << w;
  out << '\n';
  for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
    out << dtm.doc_ids()[d];
    for (auto c : dtm.row(d)) out << '\t' << c;
    out << '\n';
  }
}

void write_dtm_tsv(const DocTermMatrix& dtm, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_dtm_tsv(dtm, out);
  if (!out) throw DataError("error while writing " + path.string());
}

DocTermMatrix read_dtm_tsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read document-term matrix: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
  auto header = split_tabs(strip_cr(line));
  std::vector<std::string> vocab(header.begin() + 1, header.end());

  std::vector<std::string> ids;
  std::vector<std::uint32_t> counts;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto cells = split_tabs(line);
    if (cells.size() != header.size())
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " cells, found " + std::to_string(cells.size()));
    ids.push_back(cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(cells[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[i].size() || value > std::numeric_limits<std::uint32_t>::max() ||
          cells[i].front() == '-')
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": invalid count '" +
                        cells[i] + "'");
      counts.push_back(static_cast<std::uint32_t>(value));
    }
  }
  return DocTermMatrix(std::move(ids), std::move(vocab), std::move(counts));
}

void write_manifest_tsv(std::span<const Document> documents, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "doc_id\tauthor\ttotal_tokens\n";
  for (const auto& d : documents) out << d.id << '\t' << d.author << '\t' << d.total_tokens << '\n';
  if (!out) throw DataError("error while writing " + path.string());
}

std::vector<ManifestRow> read_manifest_tsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus manifest: " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<ManifestRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto cells = split_tabs(line);
    if (cells.size() != 3 || cells[1].empty())
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed manifest row");
    ManifestRow row{cells[0], cells[1], 0};
    try {
      row.total_tokens = std::stoull(cells[2]);
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": invalid token total");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace boostfreq
