// Copyright 2026 The lexnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXNORM_CORPUS_H_
#define LEXNORM_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Word-aligned normalization corpora and the shared-task TSV format:
//
//   raw<TAB>norm\n      one token per line
//   \n                  blank line ends a sentence
//
// A 1->n split keeps the space-separated words in a single norm field
// ("dekeuken\tde keuken"). An n->1 merge puts the whole normalization on the
// first raw token and leaves the norm of the following raw tokens empty
// ("some\tsomething", "thing\t"). Text is stored verbatim, without Unicode
// normalization.
namespace lexnorm {

struct Token {
  std::string raw;
  std::string norm;

  bool is_continuation() const { return norm.empty(); }
  bool is_changed() const { return norm != raw; }
  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Dataset {
  std::string language;
  std::vector<Sentence> sentences;

  std::size_t token_count() const;
  bool empty() const { return sentences.empty(); }
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct CorpusSummary {
  std::size_t word_count = 0;
  double pct_normalized = 0.0;
  bool has_split_merge = false;
  bool has_caps_changes = false;

  std::string to_json() const;
};

struct ParseWarning {
  std::size_t line;
  std::string message;
};

// Throws ParseError (1-based line) on invalid UTF-8, a line without exactly
// one TAB, an empty raw field or a malformed norm field. A sentence whose
// first token has an empty norm is kept but reported through `warnings`.
Dataset parse_dataset(std::string_view bytes, std::string language,
                      std::vector<ParseWarning>* warnings = nullptr);

std::string serialize_dataset(const Dataset& dataset);

Dataset read_dataset_file(const std::string& path, std::string language,
                          std::vector<ParseWarning>* warnings = nullptr);
void write_dataset_file(const std::string& path, const Dataset& dataset);

// Sentence-level split. The dev part receives max(1, round(fraction * n))
// sentences (at most n - 1), chosen by a seeded shuffle; both parts keep
// the original sentence order.
std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset,
                                          double dev_fraction,
                                          std::uint64_t seed);

Dataset concat_datasets(std::span<const Dataset> datasets);

CorpusSummary summarize(const Dataset& dataset);

// Tokens of all sentences in file order.
std::vector<const Token*> flatten(const Dataset& dataset);

}  // namespace lexnorm

#endif  // LEXNORM_CORPUS_H_
