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

#include "lexnorm/estimate.h"

#include <algorithm>
#include <optional>

#include "lexnorm/error.h"
#include "lexnorm/parallel.h"
#include "lexnorm/unicode.h"
#include "word_rules.h"

namespace lexnorm {
namespace {

constexpr std::array<std::string_view, kNumEditCategories> kCategoryNames = {
    "accent_removal", "decapitalize_first", "strip_apostrophe", "repeat_char",
    "drop_vowels",    "typo",               "other",
};

EditCategory classify(const EditOp& op, std::size_t raw_pos,
                      std::u32string_view raw,
                      const std::map<char32_t, char32_t>& accent_map,
                      const KeyboardLayout& keyboard) {
  switch (op.kind) {
    case EditKind::kSubstitute: {
      auto it = accent_map.find(op.norm_char);
      if (it != accent_map.end() && it->second == op.raw_char) {
        return EditCategory::kAccentRemoval;
      }
      if (op.position == 0 && unicode::is_upper(op.norm_char) &&
          unicode::to_lower(op.norm_char) == op.raw_char) {
        return EditCategory::kDecapitalizeFirst;
      }
      if (keyboard.adjacent(op.norm_char, op.raw_char)) return EditCategory::kTypo;
      return EditCategory::kOther;
    }
    case EditKind::kDelete:
      if (unicode::is_apostrophe(op.norm_char)) return EditCategory::kStripApostrophe;
      if (unicode::is_vowel(op.norm_char)) return EditCategory::kDropVowels;
      return EditCategory::kTypo;
    case EditKind::kInsert:
      if ((raw_pos > 0 && raw[raw_pos - 1] == op.raw_char) ||
          (raw_pos + 1 < raw.size() && raw[raw_pos + 1] == op.raw_char)) {
        return EditCategory::kRepeatChar;
      }
      return EditCategory::kTypo;
    case EditKind::kTranspose:
      return EditCategory::kTypo;
    case EditKind::kMatch:
      break;
  }
  return EditCategory::kOther;
}

// A norm together with the raw tokens that realize it.
struct Unit {
  std::vector<std::string_view> raws;
  std::string_view norm;
  std::size_t words;
};

std::vector<Unit> units_of(const Sentence& sentence) {
  std::vector<Unit> units;
  for (const Token& token : sentence.tokens) {
    if (token.norm.empty()) {
      // Continuation without a head (a deletion) carries no statistics.
      if (!units.empty()) units.back().raws.push_back(token.raw);
      continue;
    }
    const auto words = static_cast<std::size_t>(
        std::count(token.norm.begin(), token.norm.end(), ' ') + 1);
    units.push_back({{token.raw}, token.norm, words});
  }
  return units;
}

void count_word(std::string_view raw_utf8, std::string_view norm_utf8,
                const EstimationOptions& options, EstimationStats& stats) {
  RuleCounts& rules = stats.rules;
  const std::u32string raw = unicode::decode(raw_utf8);
  const std::u32string norm = unicode::decode(norm_utf8);

  ++stats.one_to_one_tokens;
  ++stats.realizations[std::string(norm_utf8)][std::string(raw_utf8)];

  std::size_t accented = 0;
  for (char32_t c : norm) accented += options.accent_map.count(c);
  rules[Rule::kAccentRemoval].opportunities += accented;
  rules[Rule::kDecapitalizeFirst].opportunities +=
      word_rules::has_capital_first(norm);
  rules[Rule::kStripApostrophe].opportunities +=
      word_rules::strippable_apostrophes(norm);
  rules[Rule::kTypoPerChar].opportunities += norm.size();
  rules[Rule::kRepeatChar].opportunities += 1;

  // Whole-word rules are peeled off in pipeline order before the character
  // alignment; each is credited only if it brings the target closer to raw.
  std::u32string target = norm;
  if (auto plural = word_rules::indonesian_plural(target)) {
    ++rules[Rule::kIndonesianPlural].opportunities;
    if (raw != target &&
        osa_distance(raw, *plural) < osa_distance(raw, target)) {
      ++rules[Rule::kIndonesianPlural].applications;
      target = *std::move(plural);
    }
  }
  // Vowel dropping and truncation are resolved together: an exact prefix
  // explains raw completely, otherwise dropping must bring raw closer.
  auto is_truncation = [&](std::u32string_view from) {
    return from.size() >= word_rules::kMinTruncatable &&
           raw.size() >= word_rules::kMinPrefix &&
           raw.size() + word_rules::kMinRemovedSuffix <= from.size() &&
           from.compare(0, raw.size(), raw) == 0;
  };
  std::optional<std::u32string> dropped;
  if (word_rules::can_drop_vowels(target)) {
    ++rules[Rule::kDropVowels].opportunities;
    dropped = word_rules::drop_vowels(target);
  }
  bool drop = false;
  bool truncate = false;
  if (raw != target) {
    if (is_truncation(target)) {
      truncate = true;
    } else if (dropped && is_truncation(*dropped)) {
      drop = truncate = true;
    } else if (dropped &&
               osa_distance(raw, *dropped) < osa_distance(raw, target)) {
      drop = true;
    }
  }
  if (drop) {
    ++rules[Rule::kDropVowels].applications;
    target = *std::move(dropped);
  }
  if (target.size() >= word_rules::kMinTruncatable) {
    ++rules[Rule::kTruncatePrefix].opportunities;
    if (truncate) {
      ++rules[Rule::kTruncatePrefix].applications;
      target = raw;
    }
  }

  if (raw == target) return;
  const EditScript script = char_align(raw, target);
  const CategoryCounts cats =
      classify_edits(script, raw, target, options.accent_map, options.keyboard);
  stats.categories += cats;
  rules[Rule::kAccentRemoval].applications += cats[EditCategory::kAccentRemoval];
  rules[Rule::kDecapitalizeFirst].applications +=
      cats[EditCategory::kDecapitalizeFirst] > 0;
  rules[Rule::kStripApostrophe].applications +=
      cats[EditCategory::kStripApostrophe];
  rules[Rule::kRepeatChar].applications += cats[EditCategory::kRepeatChar] > 0;
  // Vowel deletions left after the whole-word rule are skipped characters.
  rules[Rule::kTypoPerChar].applications +=
      cats[EditCategory::kTypo] + cats[EditCategory::kDropVowels];
}

void count_sentence(const Sentence& sentence, const EstimationOptions& options,
                    EstimationStats& stats) {
  const std::vector<Unit> units = units_of(sentence);
  RuleCounts& rules = stats.rules;
  for (std::size_t u = 0; u < units.size(); ++u) {
    const Unit& unit = units[u];
    if (unit.words > 1) {
      // A merged pair is one draw that succeeded; the scan resumes after it.
      ++stats.merge_units;
      rules[Rule::kMergeWords].applications += unit.words - 1;
      rules[Rule::kMergeWords].opportunities += unit.words - 1;
      continue;
    }
    if (u + 1 < units.size()) ++rules[Rule::kMergeWords].opportunities;
    if (unicode::length(unit.norm) >= 2) {
      ++rules[Rule::kSplitWord].opportunities;
    }
    if (unit.raws.size() > 1) {
      ++stats.split_units;
      ++rules[Rule::kSplitWord].applications;
      continue;
    }
    count_word(unit.raws.front(), unit.norm, options, stats);
  }
}

}  // namespace

std::string_view edit_category_name(EditCategory category) {
  return kCategoryNames[static_cast<std::size_t>(category)];
}

std::size_t CategoryCounts::total() const {
  std::size_t n = 0;
  for (std::size_t c : counts) n += c;
  return n;
}

CategoryCounts& CategoryCounts::operator+=(const CategoryCounts& other) {
  for (std::size_t i = 0; i < kNumEditCategories; ++i) {
    counts[i] += other.counts[i];
  }
  return *this;
}

RuleCounts& RuleCounts::operator+=(const RuleCounts& other) {
  for (Rule r : kAllRules) {
    (*this)[r].applications += other[r].applications;
    (*this)[r].opportunities += other[r].opportunities;
  }
  return *this;
}

EstimationStats& EstimationStats::operator+=(const EstimationStats& other) {
  rules += other.rules;
  categories += other.categories;
  one_to_one_tokens += other.one_to_one_tokens;
  merge_units += other.merge_units;
  split_units += other.split_units;
  for (const auto& [norm, forms] : other.realizations) {
    auto& mine = realizations[norm];
    for (const auto& [raw, n] : forms) mine[raw] += n;
  }
  return *this;
}

CategoryCounts classify_edits(const EditScript& script, std::u32string_view raw,
                              std::u32string_view norm,
                              const std::map<char32_t, char32_t>& accent_map,
                              const KeyboardLayout& keyboard) {
  if (apply_script(script, norm) != raw) {
    throw DataError("edit script does not rewrite the norm into the raw form");
  }
  CategoryCounts counts;
  std::size_t raw_pos = 0;
  for (const EditOp& op : script.ops) {
    if (op.kind != EditKind::kMatch) {
      ++counts[classify(op, raw_pos, raw, accent_map, keyboard)];
    }
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
      case EditKind::kInsert:
        ++raw_pos;
        break;
      case EditKind::kTranspose:
        raw_pos += 2;
        break;
      case EditKind::kDelete:
        break;
    }
  }
  return counts;
}

EstimationStats collect_statistics(const Dataset& dataset,
                                   const EstimationOptions& options) {
  const std::size_t n = dataset.sentences.size();
  std::vector<EstimationStats> partial(chunk_count(n, options.threads));
  parallel_chunks(n, options.threads,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      count_sentence(dataset.sentences[i], options,
                                     partial[chunk]);
                    }
                  });
  EstimationStats total;
  for (const auto& p : partial) total += p;
  return total;
}

NoiseProfile estimate_profile(const Dataset& dataset,
                              const EstimationOptions& options) {
  if (dataset.token_count() == 0) {
    throw DataError("cannot estimate a profile from an empty dataset");
  }
  if (options.language && *options.language != dataset.language) {
    throw DataError("dataset language '" + dataset.language +
                    "' does not match profile language '" + *options.language +
                    "'");
  }
  const EstimationStats stats = collect_statistics(dataset, options);

  NoiseProfile profile;
  profile.language = dataset.language;
  profile.misc_rules = options.misc_rules;
  profile.keyboard = options.keyboard;
  profile.accent_map = options.accent_map;
  for (Rule r : kAllRules) {
    profile.rule_probs[r] = std::min(1.0, stats.rules[r].rate());
  }
  for (const auto& [norm, forms] : stats.realizations) {
    std::size_t total = 0;
    for (const auto& [raw, n] : forms) total += n;
    if (total < options.min_count) continue;
    auto& dist = profile.replacement_lexicon[norm];
    for (const auto& [raw, n] : forms) {
      dist[raw] = static_cast<double>(n) / static_cast<double>(total);
    }
  }
  return profile;
}

}  // namespace lexnorm
