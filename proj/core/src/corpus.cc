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

#include "lexnorm/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "lexnorm/error.h"
#include "lexnorm/random.h"
#include "lexnorm/unicode.h"

namespace lexnorm {
namespace {

void validate_norm(std::string_view norm, std::size_t line_no) {
  if (norm.empty()) return;
  if (norm.front() == ' ' || norm.back() == ' ') {
    throw ParseError(line_no, "norm field starts or ends with a space");
  }
  if (norm.find("  ") != std::string_view::npos) {
    throw ParseError(line_no, "norm field contains consecutive spaces");
  }
}

}  // namespace

std::size_t Dataset::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::string CorpusSummary::to_json() const {
  nlohmann::ordered_json j;
  j["word_count"] = word_count;
  j["pct_normalized"] = pct_normalized;
  j["has_split_merge"] = has_split_merge;
  j["has_caps_changes"] = has_caps_changes;
  return j.dump();
}

Dataset parse_dataset(std::string_view bytes, std::string language,
                      std::vector<ParseWarning>* warnings) {
  Dataset dataset;
  dataset.language = std::move(language);
  Sentence current;
  std::size_t sentence_start_line = 0;

  auto finish_sentence = [&] {
    if (current.tokens.empty()) return;
    if (current.tokens.front().norm.empty() && warnings != nullptr) {
      warnings->push_back(
          {sentence_start_line,
           "first token of a sentence has an empty norm (deletion?)"});
    }
    dataset.sentences.push_back(std::move(current));
    current = Sentence{};
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    ++line_no;
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    const std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;

    if (line.empty()) {
      finish_sentence();
      continue;
    }
    if (!unicode::is_valid_utf8(line)) {
      throw ParseError(line_no, "invalid UTF-8");
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(line_no, "expected raw<TAB>norm, found no TAB");
    }
    if (line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected raw<TAB>norm, found several TABs");
    }
    if (tab == 0) throw ParseError(line_no, "empty raw field");
    const std::string_view norm = line.substr(tab + 1);
    validate_norm(norm, line_no);
    if (current.tokens.empty()) sentence_start_line = line_no;
    current.tokens.push_back({std::string(line.substr(0, tab)),
                              std::string(norm)});
  }
  finish_sentence();
  return dataset;
}

std::string serialize_dataset(const Dataset& dataset) {
  std::string out;
  for (const auto& sentence : dataset.sentences) {
    for (const auto& token : sentence.tokens) {
      out += token.raw;
      out += '\t';
      out += token.norm;
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

Dataset read_dataset_file(const std::string& path, std::string language,
                          std::vector<ParseWarning>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  try {
    return parse_dataset(bytes, std::move(language), warnings);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_dataset_file(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << serialize_dataset(dataset);
  if (!out) throw DataError("write failed: " + path);
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset,
                                          double dev_fraction,
                                          std::uint64_t seed) {
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0)) {
    throw std::invalid_argument("dev fraction must lie in (0, 1)");
  }
  const std::size_t n = dataset.sentences.size();
  if (n < 2) throw DataError("cannot split a dataset with fewer than 2 sentences");

  std::size_t n_dev = static_cast<std::size_t>(
      std::llround(dev_fraction * static_cast<double>(n)));
  n_dev = std::clamp<std::size_t>(n_dev, 1, n - 1);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(mix64(seed));
  for (std::size_t i = 0; i < n_dev; ++i) {
    std::size_t j = i + uniform_below(rng, n - i);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> is_dev(n, false);
  for (std::size_t i = 0; i < n_dev; ++i) is_dev[order[i]] = true;

  Dataset train{dataset.language, {}};
  Dataset dev{dataset.language, {}};
  for (std::size_t i = 0; i < n; ++i) {
    (is_dev[i] ? dev : train).sentences.push_back(dataset.sentences[i]);
  }
  return {std::move(train), std::move(dev)};
}

Dataset concat_datasets(std::span<const Dataset> datasets) {
  Dataset out;
  if (datasets.empty()) return out;
  out.language = datasets.front().language;
  for (const auto& d : datasets) {
    if (d.language != out.language) {
      throw DataError("cannot concatenate datasets of languages '" +
                      out.language + "' and '" + d.language + "'");
    }
    out.sentences.insert(out.sentences.end(), d.sentences.begin(),
                         d.sentences.end());
  }
  return out;
}

CorpusSummary summarize(const Dataset& dataset) {
  CorpusSummary summary;
  std::size_t changed = 0;
  for (const auto& sentence : dataset.sentences) {
    for (const auto& token : sentence.tokens) {
      ++summary.word_count;
      if (!token.is_changed()) continue;
      ++changed;
      if (token.norm.empty() || token.norm.find(' ') != std::string::npos) {
        summary.has_split_merge = true;
      } else if (unicode::to_lower(token.raw) ==
                 unicode::to_lower(token.norm)) {
        summary.has_caps_changes = true;
      }
    }
  }
  if (summary.word_count == 0) throw DataError("cannot summarize an empty dataset");
  summary.pct_normalized = static_cast<double>(changed) /
                           static_cast<double>(summary.word_count);
  return summary;
}

std::vector<const Token*> flatten(const Dataset& dataset) {
  std::vector<const Token*> out;
  out.reserve(dataset.token_count());
  for (const auto& sentence : dataset.sentences) {
    for (const auto& token : sentence.tokens) out.push_back(&token);
  }
  return out;
}

}  // namespace lexnorm
