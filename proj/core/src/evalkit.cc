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


#include "lexnorm/evalkit.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "json.hpp"
#include "lexnorm/unicode.h"

namespace lexnorm {
namespace {

void check_aligned(const std::vector<const Token*>& gold,
                   const Predictions& pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError(std::min(gold.size(), pred.size()),
                         "gold has " + std::to_string(gold.size()) +
                             " tokens, predictions have " +
                             std::to_string(pred.size()));
  }
}

bool same(const std::string& a, const std::string& b, bool caseless) {
  if (!caseless) return a == b;
  return unicode::to_lower(a) == unicode::to_lower(b);
}

double accuracy_of(const std::vector<const Token*>& gold,
                   const Predictions& pred, bool caseless) {
  if (gold.empty()) throw DataError("gold data has no tokens");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (same(pred[i], gold[i]->norm, caseless)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

}  // namespace

double word_accuracy(const Dataset& gold, const Predictions& pred,
                     bool caseless) {
  const auto tokens = flatten(gold);
  check_aligned(tokens, pred);
  return accuracy_of(tokens, pred, caseless);
}

double err(const Dataset& gold, const Predictions& pred, bool caseless) {
  const auto tokens = flatten(gold);
  check_aligned(tokens, pred);
  const double acc_lai = accuracy_of(tokens, lai(gold), caseless);
  if (acc_lai == 1.0) {
    throw UndefinedMetricError(
        "ERR is undefined: the gold data contains no normalizations");
  }
  const double acc = accuracy_of(tokens, pred, caseless);
  return (acc - acc_lai) / (1.0 - acc_lai);
}

double macro_average(std::span<const double> values) {
  if (values.empty()) throw DataError("nothing to average");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

Predictions lai(const Dataset& gold) {
  Predictions out;
  out.reserve(gold.token_count());
  for (const auto& s : gold.sentences) {
    for (const auto& t : s.tokens) out.push_back(t.raw);
  }
  return out;
}

MFRModel mfr_train(const Dataset& train) {
  if (train.token_count() == 0) throw DataError("empty training data");
  MFRModel model;
  for (const auto& s : train.sentences) {
    for (const auto& t : s.tokens) ++model.counts[t.raw][t.norm];
  }
  for (const auto& [raw, norms] : model.counts) {
    // std::map iterates in byte order, which for UTF-8 is code point order,
    // so the first maximum is the tie winner.
    auto best = norms.begin();
    for (auto it = norms.begin(); it != norms.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    model.lexicon.emplace(raw, best->first);
  }
  return model;
}

Predictions mfr_predict(const MFRModel& model, const Dataset& eval) {
  Predictions out;
  out.reserve(eval.token_count());
  for (const auto& s : eval.sentences) {
    for (const auto& t : s.tokens) {
      auto it = model.lexicon.find(t.raw);
      out.push_back(it == model.lexicon.end() ? t.raw : it->second);
    }
  }
  return out;
}

void CandidateSet::validate() const {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& cands = tokens[i];
    if (cands.empty()) throw AlignmentError(i, "no candidates");
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (!std::isfinite(cands[j].logprob)) {
        throw AlignmentError(i, "non-finite logprob for candidate '" +
                                    cands[j].text + "'");
      }
      if (j > 0 && cands[j].logprob > cands[j - 1].logprob) {
        throw AlignmentError(i, "candidates not sorted by descending logprob");
      }
      for (std::size_t m = 0; m < j; ++m) {
        if (cands[m].text == cands[j].text) {
          throw AlignmentError(i, "duplicate candidate '" + cands[j].text + "'");
        }
      }
    }
  }
}

CandidateSet read_candidates(std::istream& in) {
  CandidateSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "expected an object");
    auto i = j.find("i");
    if (i == j.end() || !i->is_number_unsigned() ||
        i->get<std::size_t>() != set.tokens.size()) {
      throw ParseError(line_no, "\"i\" must be " +
                                    std::to_string(set.tokens.size()));
    }
    auto c = j.find("c");
    if (c == j.end() || !c->is_array()) {
      throw ParseError(line_no, "\"c\" must be an array");
    }
    std::vector<Candidate> cands;
    for (const auto& pair : *c) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_number()) {
        throw ParseError(line_no, "candidates must be [text, logprob] pairs");
      }
      cands.push_back({pair[0].get<std::string>(), pair[1].get<double>()});
    }
    set.tokens.push_back(std::move(cands));
  }
  set.validate();
  return set;
}

CandidateSet read_candidates_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open file");
  try {
    return read_candidates(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_candidates(std::ostream& out, const CandidateSet& set) {
  for (std::size_t i = 0; i < set.tokens.size(); ++i) {
    nlohmann::ordered_json j;
    j["i"] = i;
    auto& c = j["c"] = nlohmann::ordered_json::array();
    for (const auto& cand : set.tokens[i]) {
      c.push_back({cand.text, cand.logprob});
    }
    out << j.dump() << '\n';
  }
}

Predictions ensemble(std::span<const CandidateSet> sets, std::size_t k) {
  if (sets.empty()) throw DataError("ensemble needs at least one model");
  if (k == 0) throw DataError("k must be positive");
  const std::size_t n = sets[0].tokens.size();
  for (const auto& set : sets) {
    if (set.tokens.size() != n) {
      throw AlignmentError(std::min(n, set.tokens.size()),
                           "models cover different numbers of tokens");
    }
  }
  const double models = static_cast<double>(sets.size());
  Predictions out;
  out.reserve(n);
  std::unordered_map<std::string_view, double> sums;
  for (std::size_t i = 0; i < n; ++i) {
    sums.clear();
    for (const auto& set : sets) {
      const auto& cands = set.tokens[i];
      const std::size_t top = std::min(k, cands.size());
      for (std::size_t j = 0; j < top; ++j) {
        sums[cands[j].text] += std::exp(cands[j].logprob);
      }
    }
    if (sums.empty()) throw AlignmentError(i, "no candidates");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [text, sum] : sums) best = std::max(best, sum / models);
    const double floor = best - 1e-12 * std::abs(best);
    const std::string_view* pick = nullptr;
    for (const auto& [text, sum] : sums) {
      if (sum / models >= floor && (pick == nullptr || text < *pick)) {
        pick = &text;
      }
    }
    out.emplace_back(*pick);
  }
  return out;
}

Predictions predictions_from_dataset(const Dataset& gold, const Dataset& pred) {
  const auto g = flatten(gold);
  const auto p = flatten(pred);
  for (std::size_t i = 0; i < std::min(g.size(), p.size()); ++i) {
    if (g[i]->raw != p[i]->raw) {
      throw AlignmentError(i, "raw word '" + p[i]->raw + "' does not match '" +
                                  g[i]->raw + "'");
    }
  }
  if (g.size() != p.size()) {
    throw AlignmentError(std::min(g.size(), p.size()),
                         "gold has " + std::to_string(g.size()) +
                             " tokens, predictions have " +
                             std::to_string(p.size()));
  }
  Predictions out;
  out.reserve(p.size());
  for (const Token* t : p) out.push_back(t->norm);
  return out;
}

Dataset predictions_to_dataset(const Dataset& gold, const Predictions& pred) {
  const auto tokens = flatten(gold);
  check_aligned(tokens, pred);
  Dataset out = gold;
  std::size_t i = 0;
  for (auto& s : out.sentences) {
    for (auto& t : s.tokens) {
      if (pred[i].find_first_of("\t\n") != std::string::npos) {
        throw AlignmentError(i, "prediction contains a TAB or newline");
      }
      t.norm = pred[i++];
    }
  }
  return out;
}

Predictions read_predictions_file(const std::string& path,
                                  const Dataset& gold) {
  return predictions_from_dataset(gold, read_dataset_file(path, gold.language));
}

}  // namespace lexnorm
