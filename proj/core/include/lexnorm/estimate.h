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

#ifndef LEXNORM_ESTIMATE_H_
#define LEXNORM_ESTIMATE_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexnorm/align.h"
#include "lexnorm/corpus.h"
#include "lexnorm/noise_profile.h"

// Learns a NoiseProfile from an annotated corpus.
namespace lexnorm {

// Categories a single non-match edit is sorted into. When several apply,
// the first in declaration order wins.
enum class EditCategory {
  kAccentRemoval,      // substitute with accent_map[norm_char] == raw_char
  kDecapitalizeFirst,  // position-0 substitute that only lowercases
  kStripApostrophe,    // delete of an apostrophe
  kRepeatChar,         // insert equal to an adjacent raw character
  kDropVowels,         // delete of a vowel
  kTypo,               // neighbor substitute, transpose, other delete/insert
  kOther,
};

inline constexpr std::size_t kNumEditCategories = 7;

std::string_view edit_category_name(EditCategory category);

struct CategoryCounts {
  std::array<std::size_t, kNumEditCategories> counts{};

  std::size_t& operator[](EditCategory c) {
    return counts[static_cast<std::size_t>(c)];
  }
  std::size_t operator[](EditCategory c) const {
    return counts[static_cast<std::size_t>(c)];
  }
  std::size_t total() const;
  CategoryCounts& operator+=(const CategoryCounts& other);
  friend bool operator==(const CategoryCounts&, const CategoryCounts&) = default;
};

// Classifies every non-match op of `script`, which must rewrite `norm` into
// `raw` (DataError otherwise).
CategoryCounts classify_edits(const EditScript& script, std::u32string_view raw,
                              std::u32string_view norm,
                              const std::map<char32_t, char32_t>& accent_map,
                              const KeyboardLayout& keyboard);

struct RuleCount {
  std::size_t applications = 0;
  std::size_t opportunities = 0;

  double rate() const {
    return opportunities == 0 ? 0.0
                              : static_cast<double>(applications) /
                                    static_cast<double>(opportunities);
  }
  friend bool operator==(const RuleCount&, const RuleCount&) = default;
};

struct RuleCounts : PerRule<RuleCount> {
  RuleCounts& operator+=(const RuleCounts& other);
};

// What the estimator saw, beyond the rule counts.
struct EstimationStats {
  RuleCounts rules;
  CategoryCounts categories;
  std::size_t one_to_one_tokens = 0;
  std::size_t merge_units = 0;
  std::size_t split_units = 0;
  // (norm word, raw form) -> occurrences over 1:1 tokens.
  std::map<std::string, std::map<std::string, std::size_t>> realizations;

  EstimationStats& operator+=(const EstimationStats& other);
};

struct EstimationOptions {
  // Lexicon entries need at least this many occurrences of the norm word.
  std::size_t min_count = 2;
  // When set, must equal the dataset language.
  std::optional<std::string> language;
  // Copied verbatim into the profile; they are not estimated.
  std::vector<MiscRule> misc_rules;
  KeyboardLayout keyboard = KeyboardLayout::qwerty();
  std::map<char32_t, char32_t> accent_map = NoiseProfile::default_accent_map();
  unsigned threads = 1;
};

// Counting pass over the whole dataset. Per-sentence counts are reduced in
// sentence order, so the result does not depend on `threads`.
EstimationStats collect_statistics(const Dataset& dataset,
                                   const EstimationOptions& options);

// Rule probabilities are applications / opportunities, where
//   accent_removal      accented characters (accent_map keys) in norms
//   decapitalize_first  norms starting with an uppercase letter
//   strip_apostrophe    apostrophes in norms
//   typo_per_char       norm characters
//   split_word          norm words of 2+ characters not part of a merge
//   merge_words         adjacent word pairs the left-to-right merge scan
//                       visits (a merged pair is skipped over)
//   indonesian_plural   norms of the form X-X...
//   drop_vowels         norms with a non-initial vowel
//   truncate_prefix     norms of 4+ characters
//   repeat_char         norms
// Character-level rules only see 1:1 tokens. Throws DataError for an empty
// dataset or a language mismatch.
NoiseProfile estimate_profile(const Dataset& dataset,
                              const EstimationOptions& options = {});

}  // namespace lexnorm

#endif  // LEXNORM_ESTIMATE_H_
