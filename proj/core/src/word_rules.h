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

#ifndef LEXNORM_SRC_WORD_RULES_H_
#define LEXNORM_SRC_WORD_RULES_H_

// Whole-word rewrites shared by the corruptor and the estimator, so that the
// eligibility conditions the estimator counts are exactly the ones the
// corruptor samples from.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lexnorm/unicode.h"

namespace lexnorm::word_rules {

// "laki-lakinya" -> "laki2nya": the first hyphen whose left side X is
// repeated right after it.
inline std::optional<std::u32string> indonesian_plural(std::u32string_view w) {
  for (std::size_t k = 1; k + 1 < w.size(); ++k) {
    if (w[k] != U'-') continue;
    const std::u32string_view stem = w.substr(0, k);
    const std::u32string_view rest = w.substr(k + 1);
    if (rest.substr(0, stem.size()) == stem) {
      std::u32string out(stem);
      out.push_back(U'2');
      out.append(rest.substr(stem.size()));
      return out;
    }
  }
  return std::nullopt;
}

inline std::u32string drop_vowels(std::u32string_view w) {
  std::u32string out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == 0 || !unicode::is_vowel(w[i])) out.push_back(w[i]);
  }
  return out;
}

inline bool can_drop_vowels(std::u32string_view w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (unicode::is_vowel(w[i])) return true;
  }
  return false;
}

inline constexpr std::size_t kMinTruncatable = 4;
inline constexpr std::size_t kMinPrefix = 2;
// Truncation removes at least this many trailing characters.
inline constexpr std::size_t kMinRemovedSuffix = 2;

// Apostrophes that may be stripped: none in a word made only of apostrophes.
inline std::size_t strippable_apostrophes(std::u32string_view w) {
  std::size_t n = 0;
  for (char32_t c : w) n += unicode::is_apostrophe(c);
  return n == w.size() ? 0 : n;
}

inline bool has_capital_first(std::u32string_view w) {
  return !w.empty() && unicode::is_upper(w[0]);
}

}  // namespace lexnorm::word_rules

#endif  // LEXNORM_SRC_WORD_RULES_H_
