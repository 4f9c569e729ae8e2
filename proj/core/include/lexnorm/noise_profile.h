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

#ifndef LEXNORM_NOISE_PROFILE_H_
#define LEXNORM_NOISE_PROFILE_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexnorm {

// Character-level and structural corruption rules with a learned
// probability. The order matches the profile file's key listing, not the
// order in which the corruptor applies them.
enum class Rule {
  kAccentRemoval,
  kDecapitalizeFirst,
  kStripApostrophe,
  kTypoPerChar,
  kSplitWord,
  kMergeWords,
  kIndonesianPlural,
  kDropVowels,
  kTruncatePrefix,
  kRepeatChar,
};

inline constexpr std::size_t kNumRules = 10;
inline constexpr std::array<Rule, kNumRules> kAllRules = {
    Rule::kAccentRemoval,    Rule::kDecapitalizeFirst, Rule::kStripApostrophe,
    Rule::kTypoPerChar,      Rule::kSplitWord,         Rule::kMergeWords,
    Rule::kIndonesianPlural, Rule::kDropVowels,        Rule::kTruncatePrefix,
    Rule::kRepeatChar,
};

std::string_view rule_name(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);

template <typename T>
class PerRule {
 public:
  T& operator[](Rule r) { return values_[static_cast<std::size_t>(r)]; }
  const T& operator[](Rule r) const {
    return values_[static_cast<std::size_t>(r)];
  }
  friend bool operator==(const PerRule&, const PerRule&) = default;

 private:
  std::array<T, kNumRules> values_{};
};

using RuleProbs = PerRule<double>;

// Symmetric key adjacency.
class KeyboardLayout {
 public:
  KeyboardLayout() = default;

  // Rows of a staggered keyboard; each row is shifted right by half a key
  // relative to the one above.
  static KeyboardLayout from_rows(const std::vector<std::u32string>& rows);
  static const KeyboardLayout& qwerty();

  void add_pair(char32_t a, char32_t b);
  // Neighbors of `c`; an uppercase letter without its own entry uses the
  // uppercased neighbors of its lowercase form.
  std::vector<char32_t> neighbors(char32_t c) const;
  bool adjacent(char32_t a, char32_t b) const;
  bool is_symmetric() const;

  const std::map<char32_t, std::vector<char32_t>>& adjacency() const {
    return adjacency_;
  }
  std::map<char32_t, std::vector<char32_t>>& mutable_adjacency() {
    return adjacency_;
  }

  friend bool operator==(const KeyboardLayout&, const KeyboardLayout&) = default;

 private:
  std::map<char32_t, std::vector<char32_t>> adjacency_;
};

// Rewrites occurrences of `pattern` (literal, or ECMAScript regex when
// `is_regex`) to `replacement`, each occurrence independently.
struct MiscRule {
  std::string pattern;
  std::string replacement;
  double probability = 0.0;
  bool is_regex = false;

  friend bool operator==(const MiscRule&, const MiscRule&) = default;
};

using ReplacementLexicon =
    std::map<std::string, std::map<std::string, double>>;

struct NoiseProfile {
  std::string language;
  // norm word -> distribution over raw realizations.
  ReplacementLexicon replacement_lexicon;
  RuleProbs rule_probs;
  std::vector<MiscRule> misc_rules;
  KeyboardLayout keyboard = KeyboardLayout::qwerty();
  std::map<char32_t, char32_t> accent_map = default_accent_map();

  static std::map<char32_t, char32_t> default_accent_map();

  // Throws SchemaError on the first violated invariant.
  void validate() const;

  friend bool operator==(const NoiseProfile&, const NoiseProfile&) = default;
};

inline constexpr int kProfileVersion = 1;

// Pretty-printed JSON with sorted keys.
std::string save_profile(const NoiseProfile& profile);

struct ProfileLoad {
  NoiseProfile profile;
  std::vector<std::string> warnings;
};

// Throws SchemaError naming the offending field.
ProfileLoad load_profile(std::string_view json);
ProfileLoad load_profile_file(const std::string& path);

}  // namespace lexnorm

#endif  // LEXNORM_NOISE_PROFILE_H_
