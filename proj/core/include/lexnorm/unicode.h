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

#ifndef LEXNORM_UNICODE_H_
#define LEXNORM_UNICODE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

// UTF-8 transcoding and the handful of character properties the toolkit
// needs. Case mapping is the simple one-to-one mapping for Latin, Greek and
// Cyrillic; Turkish dotted/dotless i is not special-cased.
namespace lexnorm::unicode {

bool is_valid_utf8(std::string_view bytes);

// Throws DataError on malformed input.
std::u32string decode(std::string_view utf8);
std::optional<std::u32string> try_decode(std::string_view utf8);

std::string encode(std::u32string_view text);
void append_utf8(char32_t cp, std::string& out);

// Number of Unicode scalar values; input must be valid UTF-8.
std::size_t length(std::string_view utf8);

char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);
inline bool is_upper(char32_t cp) { return to_lower(cp) != cp; }
inline bool is_lower(char32_t cp) { return to_upper(cp) != cp; }

std::string to_lower(std::string_view utf8);

bool is_whitespace(char32_t cp);
inline bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }
bool is_letter(char32_t cp);
// Letters, digits, combining marks and '_'.
bool is_word_char(char32_t cp);
// Base letter of a precomposed accented Latin letter, or nullopt.
std::optional<char32_t> accent_base(char32_t cp);
// Every (accented, base) pair known to accent_base(), sorted.
std::span<const std::pair<char32_t, char32_t>> accent_pairs();
// a, e, i, o, u in either case, with or without diacritics.
bool is_vowel(char32_t cp);
inline bool is_apostrophe(char32_t cp) {
  return cp == U'\'' || cp == U'’';
}

}  // namespace lexnorm::unicode

#endif  // LEXNORM_UNICODE_H_
