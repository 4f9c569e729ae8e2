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

#include "lexnorm/corruptor.h"

#include <algorithm>
#include <array>
#include <iterator>

#include "lexnorm/error.h"
#include "lexnorm/parallel.h"
#include "lexnorm/unicode.h"
#include "word_rules.h"

namespace lexnorm {
namespace {

void check_word(std::string_view word) {
  if (word.empty()) throw DataError("cannot corrupt an empty word");
  for (char c : word) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw DataError("word contains whitespace: '" + std::string(word) + "'");
    }
  }
}

enum class Typo { kSkip, kInsert, kSubstitute, kTranspose };

char32_t random_letter_except(char32_t c, Rng& rng) {
  const char32_t lower = unicode::to_lower(c);
  char32_t letter;
  do {
    letter = U'a' + static_cast<char32_t>(uniform_below(rng, 26));
  } while (letter == lower);
  return unicode::is_upper(c) ? unicode::to_upper(letter) : letter;
}

char32_t random_neighbor(const KeyboardLayout& keyboard, char32_t c,
                         Rng& rng) {
  const auto ns = keyboard.neighbors(c);
  if (ns.empty()) return random_letter_except(c, rng);
  return ns[uniform_below(rng, ns.size())];
}

}  // namespace

Corruptor::Corruptor(NoiseProfile profile, int max_rules_per_word)
    : profile_(std::move(profile)), max_rules_per_word_(max_rules_per_word) {
  profile_.validate();
  for (const auto& [word, dist] : profile_.replacement_lexicon) {
    LexiconEntry entry;
    double total = 0.0;
    for (const auto& [form, p] : dist) {
      total += p;
      entry.forms.push_back(form);
      entry.cumulative.push_back(total);
    }
    lexicon_.emplace(word, std::move(entry));
  }
  for (const auto& rule : profile_.misc_rules) {
    if (!rule.is_regex) {
      misc_regex_.push_back(nullptr);
      continue;
    }
    try {
      misc_regex_.push_back(std::make_shared<const std::regex>(rule.pattern));
    } catch (const std::regex_error& e) {
      throw SchemaError("misc_rules", "bad regex '" + rule.pattern + "': " +
                                          e.what());
    }
  }
}

std::string Corruptor::sample_lexicon(const LexiconEntry& entry,
                                      Rng& rng) const {
  const double u = uniform01(rng) * entry.cumulative.back();
  auto it = std::upper_bound(entry.cumulative.begin(), entry.cumulative.end(), u);
  if (it == entry.cumulative.end()) --it;
  return entry.forms[static_cast<std::size_t>(it - entry.cumulative.begin())];
}

bool Corruptor::apply_misc(std::string& word, Rng& rng) const {
  bool changed = false;
  for (std::size_t r = 0; r < profile_.misc_rules.size(); ++r) {
    const MiscRule& rule = profile_.misc_rules[r];
    if (rule.probability <= 0.0) continue;
    std::string out;
    if (misc_regex_[r]) {
      auto last = word.cbegin();
      for (std::sregex_iterator it(word.begin(), word.end(), *misc_regex_[r]),
           end;
           it != end; ++it) {
        const auto& m = *it;
        out.append(last, m[0].first);
        if (bernoulli(rng, rule.probability)) {
          out += m.format(rule.replacement);
        } else {
          out.append(m[0].first, m[0].second);
        }
        last = m[0].second;
      }
      out.append(last, word.cend());
    } else {
      std::size_t pos = 0;
      while (true) {
        const std::size_t hit = word.find(rule.pattern, pos);
        if (hit == std::string::npos) break;
        out.append(word, pos, hit - pos);
        if (bernoulli(rng, rule.probability)) {
          out += rule.replacement;
        } else {
          out += rule.pattern;
        }
        pos = hit + rule.pattern.size();
      }
      out.append(word, pos, std::string::npos);
    }
    if (!out.empty() && out != word && unicode::is_valid_utf8(out)) {
      word = std::move(out);
      changed = true;
    }
  }
  return changed;
}

WordCorruption Corruptor::corrupt_word(std::string_view word, Rng& rng) const {
  check_word(word);
  WordCorruption result;
  result.norm = std::string(word);

  if (auto it = lexicon_.find(word); it != lexicon_.end()) {
    std::string form = sample_lexicon(it->second, rng);
    if (form != word) {
      result.raw_tokens.push_back(std::move(form));
      result.applied_rules.emplace_back(kLexiconTag);
      return result;
    }
  }

  const RuleProbs& probs = profile_.rule_probs;
  int fired = 0;
  auto may_fire = [&] { return fired < max_rules_per_word_; };
  auto record = [&](std::string_view tag) {
    ++fired;
    result.applied_rules.emplace_back(tag);
  };

  std::string text(word);
  if (may_fire() && apply_misc(text, rng)) record(kMiscTag);

  std::u32string w = unicode::decode(text);

  if (may_fire() && probs[Rule::kAccentRemoval] > 0.0) {
    bool changed = false;
    for (char32_t& c : w) {
      auto it = profile_.accent_map.find(c);
      if (it != profile_.accent_map.end() &&
          bernoulli(rng, probs[Rule::kAccentRemoval])) {
        c = it->second;
        changed = true;
      }
    }
    if (changed) record(rule_name(Rule::kAccentRemoval));
  }

  if (may_fire() && word_rules::has_capital_first(w) &&
      bernoulli(rng, probs[Rule::kDecapitalizeFirst])) {
    w[0] = unicode::to_lower(w[0]);
    record(rule_name(Rule::kDecapitalizeFirst));
  }

  if (may_fire() && probs[Rule::kStripApostrophe] > 0.0 &&
      word_rules::strippable_apostrophes(w) > 0) {
    std::u32string out;
    out.reserve(w.size());
    for (char32_t c : w) {
      if (unicode::is_apostrophe(c) &&
          bernoulli(rng, probs[Rule::kStripApostrophe])) {
        continue;
      }
      out.push_back(c);
    }
    if (out.size() != w.size()) {
      w = std::move(out);
      record(rule_name(Rule::kStripApostrophe));
    }
  }

  if (may_fire() && probs[Rule::kIndonesianPlural] > 0.0) {
    if (auto plural = word_rules::indonesian_plural(w);
        plural && bernoulli(rng, probs[Rule::kIndonesianPlural])) {
      w = *std::move(plural);
      record(rule_name(Rule::kIndonesianPlural));
    }
  }

  if (may_fire() && word_rules::can_drop_vowels(w) &&
      bernoulli(rng, probs[Rule::kDropVowels])) {
    w = word_rules::drop_vowels(w);
    record(rule_name(Rule::kDropVowels));
  }

  if (may_fire() && w.size() >= word_rules::kMinTruncatable &&
      bernoulli(rng, probs[Rule::kTruncatePrefix])) {
    const auto keep = uniform_between(
        rng, static_cast<std::int64_t>(word_rules::kMinPrefix),
        static_cast<std::int64_t>(w.size() - word_rules::kMinRemovedSuffix));
    w.resize(static_cast<std::size_t>(keep));
    record(rule_name(Rule::kTruncatePrefix));
  }

  if (may_fire() && probs[Rule::kTypoPerChar] > 0.0) {
    const double p = probs[Rule::kTypoPerChar];
    std::u32string out;
    out.reserve(w.size() + 2);
    bool changed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const char32_t c = w[i];
      if (!bernoulli(rng, p)) {
        out.push_back(c);
        continue;
      }
      std::array<Typo, 4> ops;
      std::size_t n = 0;
      if (!out.empty() || i + 1 < w.size()) ops[n++] = Typo::kSkip;
      ops[n++] = Typo::kInsert;
      ops[n++] = Typo::kSubstitute;
      if (i + 1 < w.size() && w[i + 1] != c) ops[n++] = Typo::kTranspose;
      switch (ops[uniform_below(rng, n)]) {
        case Typo::kSkip:
          break;
        case Typo::kInsert:
          out.push_back(c);
          out.push_back(random_neighbor(profile_.keyboard, c, rng));
          break;
        case Typo::kSubstitute:
          out.push_back(random_neighbor(profile_.keyboard, c, rng));
          break;
        case Typo::kTranspose:
          out.push_back(w[i + 1]);
          out.push_back(c);
          ++i;
          break;
      }
      changed = true;
    }
    if (changed) {
      w = std::move(out);
      record(rule_name(Rule::kTypoPerChar));
    }
  }

  if (may_fire() && bernoulli(rng, probs[Rule::kRepeatChar])) {
    const std::size_t pos = uniform_below(rng, w.size());
    const auto extra = static_cast<std::size_t>(uniform_between(rng, 1, 3));
    w.insert(pos, extra, w[pos]);
    record(rule_name(Rule::kRepeatChar));
  }

  result.raw_tokens.push_back(unicode::encode(w));
  return result;
}

Sentence Corruptor::corrupt_sentence(std::span<const std::string> words,
                                     Rng& rng) const {
  for (const auto& w : words) check_word(w);
  const RuleProbs& probs = profile_.rule_probs;
  Sentence sentence;
  sentence.tokens.reserve(words.size());
  std::size_t i = 0;
  while (i < words.size()) {
    if (i + 1 < words.size() && bernoulli(rng, probs[Rule::kMergeWords])) {
      sentence.tokens.push_back(
          {words[i] + words[i + 1], words[i] + " " + words[i + 1]});
      i += 2;
      continue;
    }
    const std::string& word = words[i];
    if (probs[Rule::kSplitWord] > 0.0) {
      const std::size_t len = unicode::length(word);
      if (len >= 2 && bernoulli(rng, probs[Rule::kSplitWord])) {
        const std::u32string w = unicode::decode(word);
        const auto cut = static_cast<std::size_t>(
            uniform_between(rng, 1, static_cast<std::int64_t>(len) - 1));
        sentence.tokens.push_back({unicode::encode(w.substr(0, cut)), word});
        sentence.tokens.push_back({unicode::encode(w.substr(cut)), ""});
        ++i;
        continue;
      }
    }
    WordCorruption c = corrupt_word(word, rng);
    sentence.tokens.push_back({std::move(c.raw_tokens.front()), word});
    ++i;
  }
  return sentence;
}

WordCorruption corrupt_word(std::string_view word, const NoiseProfile& profile,
                            Rng& rng) {
  return Corruptor(profile).corrupt_word(word, rng);
}

Sentence corrupt_sentence(std::span<const std::string> words,
                          const NoiseProfile& profile, Rng& rng) {
  return Corruptor(profile).corrupt_sentence(words, rng);
}

namespace {

void check_config(const CorruptionConfig& config) {
  if (config.rule_order != kRuleOrderV1) {
    throw DataError("unknown rule order '" + config.rule_order + "'");
  }
  if (config.max_rules_per_word < 0) {
    throw DataError("max_rules_per_word must be non-negative");
  }
}

std::vector<Sentence> corrupt_range(const Corruptor& corruptor,
                                    std::span<const TokenizedSentence> clean,
                                    std::uint64_t seed,
                                    std::uint64_t first_index,
                                    unsigned threads) {
  std::vector<Sentence> out(clean.size());
  parallel_chunks(clean.size(), threads,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      if (clean[i].empty()) {
                        throw DataError("sentence " +
                                        std::to_string(first_index + i) +
                                        " has no tokens");
                      }
                      Rng rng = make_rng(seed, first_index + i);
                      out[i] = corruptor.corrupt_sentence(clean[i], rng);
                    }
                  });
  return out;
}

}  // namespace

Dataset synthesize(std::span<const TokenizedSentence> clean,
                   const NoiseProfile& profile, const CorruptionConfig& config,
                   unsigned threads) {
  check_config(config);
  const Corruptor corruptor(profile, config.max_rules_per_word);
  Dataset dataset;
  dataset.language = profile.language;
  dataset.sentences = corrupt_range(corruptor, clean, config.seed, 0, threads);
  return dataset;
}

TokenizedSentence split_tokens(std::string_view line) {
  TokenizedSentence out;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

SynthesisStats synthesize_stream(std::istream& clean, std::ostream& tsv,
                                 const NoiseProfile& profile,
                                 const CorruptionConfig& config,
                                 unsigned threads, std::size_t batch_size) {
  check_config(config);
  const Corruptor corruptor(profile, config.max_rules_per_word);
  SynthesisStats stats;
  std::vector<TokenizedSentence> batch;
  batch.reserve(batch_size);
  std::string line;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (batch.empty()) return;
    Dataset part;
    part.sentences =
        corrupt_range(corruptor, batch, config.seed, stats.sentences, threads);
    tsv << serialize_dataset(part);
    if (!tsv) {
      throw DataError("write failed after sentence " +
                      std::to_string(stats.sentences));
    }
    stats.sentences += batch.size();
    batch.clear();
  };

  while (std::getline(clean, line)) {
    ++line_no;
    if (!unicode::is_valid_utf8(line)) {
      throw ParseError(line_no, "invalid UTF-8");
    }
    TokenizedSentence tokens = split_tokens(line);
    if (tokens.empty()) continue;
    stats.words += tokens.size();
    batch.push_back(std::move(tokens));
    if (batch.size() >= batch_size) flush();
  }
  if (clean.bad()) {
    throw DataError("read failed after sentence " +
                    std::to_string(stats.sentences + batch.size()));
  }
  flush();
  return stats;
}

}  // namespace lexnorm
