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

#ifndef LEXNORM_TWOKENIZER_H_
#define LEXNORM_TWOKENIZER_H_

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

// Turns plain-text encyclopedia dumps into tokenized sentences that serve as
// the clean side of synthetic data.
namespace lexnorm {

// Non-empty tokens without internal whitespace.
using TokenizedSentence = std::vector<std::string>;

inline constexpr std::size_t kMinCleanLineLength = 32;

struct CleanStats {
  std::size_t lines_read = 0;
  std::size_t lines_kept = 0;
  std::size_t invalid_utf8 = 0;
};

// Keeps lines that, after trimming trailing whitespace, are at least 32
// scalar values long and do not end with ':'. Lines are returned trimmed.
std::vector<std::string> clean_lines(std::istream& in,
                                     CleanStats* stats = nullptr);
std::vector<std::string> clean_lines(std::string_view text,
                                     CleanStats* stats = nullptr);
bool is_clean_line(std::string_view line);

// Splits after a run of [.?!] that is followed by whitespace and then an
// uppercase letter, a digit or an opening quote/bracket. The whitespace
// between sentences is dropped. Digits are included so numbered sentences
// split; "Version 2. 0" therefore splits too.
std::vector<std::string> segment_sentences(std::string_view line);

// Twitter-aware tokenization. At each position the first matching pattern
// wins: URL, e-mail, @mention, #hashtag, emoticon, number with separators,
// word with internal apostrophes/hyphens, any other single character.
TokenizedSentence tokenize(std::string_view sentence);

// The fixed emoticon inventory recognized by tokenize().
const std::vector<std::string>& emoticons();

}  // namespace lexnorm

#endif  // LEXNORM_TWOKENIZER_H_
