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

#include "lexnorm/twokenizer.h"

#include <algorithm>
#include <sstream>

#include "lexnorm/unicode.h"

namespace lexnorm {
namespace {

using unicode::is_whitespace;
using unicode::is_word_char;

std::string_view trim_trailing(std::string_view s) {
  while (!s.empty()) {
    const char c = s.back();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
        c == '\v') {
      s.remove_suffix(1);
    } else {
      break;
    }
  }
  return s;
}

bool is_opening_quote(char32_t c) {
  return c == U'"' || c == U'\'' || c == U'“' || c == U'‘' || c == U'«' ||
         c == U'„' || c == U'(' || c == U'[';
}

bool is_terminator(char32_t c) { return c == U'.' || c == U'?' || c == U'!'; }

bool starts_with_ci(std::u32string_view s, std::size_t i,
                    std::u32string_view prefix) {
  if (s.size() - i < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (unicode::to_lower(s[i + k]) != prefix[k]) return false;
  }
  return true;
}

// Each matcher returns the length of its match at `i`, or 0.

std::size_t match_url(std::u32string_view s, std::size_t i) {
  std::size_t prefix = 0;
  for (std::u32string_view p : {U"https://", U"http://", U"www."}) {
    if (starts_with_ci(s, i, p)) {
      prefix = p.size();
      break;
    }
  }
  if (prefix == 0) return 0;
  std::size_t end = i + prefix;
  while (end < s.size() && !is_whitespace(s[end])) ++end;
  static constexpr std::u32string_view kTrailing = U".,;:!?)]}\"'’”";
  while (end > i + prefix && kTrailing.find(s[end - 1]) != std::u32string_view::npos) {
    --end;
  }
  return end > i + prefix ? end - i : 0;
}

bool is_email_local(char32_t c) {
  return is_word_char(c) || c == U'.' || c == U'+' || c == U'-' || c == U'%';
}

bool is_domain_char(char32_t c) { return is_word_char(c) || c == U'-'; }

std::size_t match_email(std::u32string_view s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && is_email_local(s[j])) ++j;
  if (j == i || j >= s.size() || s[j] != U'@') return 0;
  ++j;
  std::size_t label = j;
  while (j < s.size() && is_domain_char(s[j])) ++j;
  if (j == label) return 0;
  std::size_t end = 0;
  while (j + 1 < s.size() && s[j] == U'.' && is_domain_char(s[j + 1])) {
    ++j;
    while (j < s.size() && is_domain_char(s[j])) ++j;
    end = j;
  }
  return end == 0 ? 0 : end - i;
}

std::size_t match_prefixed(std::u32string_view s, std::size_t i,
                           char32_t sigil) {
  if (s[i] != sigil) return 0;
  std::size_t j = i + 1;
  while (j < s.size() && is_word_char(s[j])) ++j;
  return j > i + 1 ? j - i : 0;
}

const std::vector<std::u32string>& emoticons_by_length() {
  static const std::vector<std::u32string> list = [] {
    std::vector<std::u32string> out;
    for (const auto& e : emoticons()) out.push_back(unicode::decode(e));
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) {
                       return a.size() > b.size();
                     });
    return out;
  }();
  return list;
}

std::size_t match_emoticon(std::u32string_view s, std::size_t i) {
  for (const auto& e : emoticons_by_length()) {
    if (s.substr(i, e.size()) != e) continue;
    const std::size_t end = i + e.size();
    // ":Dad" is not an emoticon followed by a word.
    if (end < s.size() && is_word_char(e.back()) && is_word_char(s[end])) {
      continue;
    }
    return e.size();
  }
  return 0;
}

std::size_t match_number(std::u32string_view s, std::size_t i) {
  auto digits = [&](std::size_t j) {
    while (j < s.size() && unicode::is_ascii_digit(s[j])) ++j;
    return j;
  };
  std::size_t j = digits(i);
  if (j == i) return 0;
  while (j + 1 < s.size() &&
         (s[j] == U'.' || s[j] == U',' || s[j] == U':') &&
         unicode::is_ascii_digit(s[j + 1])) {
    j = digits(j + 1);
  }
  // "2nd" is a word.
  if (j < s.size() && is_word_char(s[j])) return 0;
  return j - i;
}

std::size_t match_word(std::u32string_view s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && is_word_char(s[j])) ++j;
  if (j == i) return 0;
  while (j + 1 < s.size() &&
         (unicode::is_apostrophe(s[j]) || s[j] == U'-') &&
         is_word_char(s[j + 1])) {
    ++j;
    while (j < s.size() && is_word_char(s[j])) ++j;
  }
  return j - i;
}

}  // namespace

const std::vector<std::string>& emoticons() {
  static const std::vector<std::string> list = {
      ":-)", ":)",  ":-(", ":(",  ";-)", ";)",  ":-D", ":D",  ":-P", ":P",
      ":-p", ":p",  ":-O", ":O",  ":-o", ":o",  ":-/", ":/",  ":-|", ":|",
      ":'(", ":')", ":*",  ":-*", "=)",  "=(",  "=D",  "=P",  "<3",  "</3",
      "xD",  "XD",  "^_^", "^^",  "-_-", "o_O", "O_o", "T_T", ";_;", "8-)",
      "B-)", ">:(", ":-]", ":]",  ":-[", ":[",  ":3",  ";D",  ":S",  ":$",
  };
  return list;
}

bool is_clean_line(std::string_view line) {
  line = trim_trailing(line);
  if (line.empty() || line.back() == ':') return false;
  return unicode::length(line) >= kMinCleanLineLength;
}

std::vector<std::string> clean_lines(std::istream& in, CleanStats* stats) {
  std::vector<std::string> out;
  CleanStats local;
  std::string line;
  while (std::getline(in, line)) {
    ++local.lines_read;
    if (!unicode::is_valid_utf8(line)) {
      ++local.invalid_utf8;
      continue;
    }
    if (!is_clean_line(line)) continue;
    out.emplace_back(trim_trailing(line));
    ++local.lines_kept;
  }
  if (stats != nullptr) *stats = local;
  return out;
}

std::vector<std::string> clean_lines(std::string_view text,
                                     CleanStats* stats) {
  std::istringstream in{std::string(text)};
  return clean_lines(in, stats);
}

std::vector<std::string> segment_sentences(std::string_view line) {
  const std::u32string s = unicode::decode(line);
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_terminator(s[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < s.size() && is_terminator(s[end])) ++end;
    std::size_t next = end;
    while (next < s.size() && is_whitespace(s[next])) ++next;
    if (next > end && next < s.size() &&
        (unicode::is_upper(s[next]) || unicode::is_ascii_digit(s[next]) ||
         is_opening_quote(s[next]))) {
      out.push_back(unicode::encode(s.substr(start, end - start)));
      start = next;
    }
    i = next;
  }
  std::size_t last_end = s.size();
  while (last_end > start && is_whitespace(s[last_end - 1])) --last_end;
  if (last_end > start) {
    out.push_back(unicode::encode(s.substr(start, last_end - start)));
  }
  return out;
}

TokenizedSentence tokenize(std::string_view sentence) {
  const std::u32string s = unicode::decode(sentence);
  const std::u32string_view v(s);
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < v.size()) {
    if (is_whitespace(v[i])) {
      ++i;
      continue;
    }
    std::size_t len = match_url(v, i);
    if (len == 0) len = match_email(v, i);
    if (len == 0) len = match_prefixed(v, i, U'@');
    if (len == 0) len = match_prefixed(v, i, U'#');
    if (len == 0) len = match_emoticon(v, i);
    if (len == 0) len = match_number(v, i);
    if (len == 0) len = match_word(v, i);
    if (len == 0) len = 1;
    out.push_back(unicode::encode(v.substr(i, len)));
    i += len;
  }
  return out;
}

}  // namespace lexnorm
