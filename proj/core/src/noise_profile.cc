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

#include "lexnorm/noise_profile.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "lexnorm/error.h"
#include "lexnorm/unicode.h"

namespace lexnorm {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kNumRules> kRuleNames = {
    "accent_removal",    "decapitalize_first", "strip_apostrophe",
    "typo_per_char",     "split_word",         "merge_words",
    "indonesian_plural", "drop_vowels",        "truncate_prefix",
    "repeat_char",
};

std::string utf8(char32_t c) {
  std::string s;
  unicode::append_utf8(c, s);
  return s;
}

std::string utf8(const std::vector<char32_t>& cs) {
  std::string s;
  for (char32_t c : cs) unicode::append_utf8(c, s);
  return s;
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_probability(double p, const std::string& path) {
  if (!is_probability(p)) {
    throw SchemaError(path, "probability " + std::to_string(p) +
                                " outside [0, 1]");
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

char32_t get_char(const std::string& s, const std::string& path) {
  auto cps = unicode::try_decode(s);
  if (!cps || cps->size() != 1) {
    throw SchemaError(path, "expected exactly one character, got '" + s + "'");
  }
  return (*cps)[0];
}

}  // namespace

std::string_view rule_name(Rule rule) {
  return kRuleNames[static_cast<std::size_t>(rule)];
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (Rule r : kAllRules) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

KeyboardLayout KeyboardLayout::from_rows(
    const std::vector<std::u32string>& rows) {
  KeyboardLayout layout;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c + 1 < row.size()) layout.add_pair(row[c], row[c + 1]);
      if (r + 1 < rows.size()) {
        const auto& below = rows[r + 1];
        // Key c sits above keys c - 1 and c of the next (shifted) row.
        if (c >= 1 && c - 1 < below.size()) layout.add_pair(row[c], below[c - 1]);
        if (c < below.size()) layout.add_pair(row[c], below[c]);
      }
    }
  }
  return layout;
}

const KeyboardLayout& KeyboardLayout::qwerty() {
  static const KeyboardLayout layout =
      from_rows({U"qwertyuiop", U"asdfghjkl", U"zxcvbnm"});
  return layout;
}

void KeyboardLayout::add_pair(char32_t a, char32_t b) {
  if (a == b) return;
  auto insert = [this](char32_t key, char32_t value) {
    auto& v = adjacency_[key];
    auto it = std::lower_bound(v.begin(), v.end(), value);
    if (it == v.end() || *it != value) v.insert(it, value);
  };
  insert(a, b);
  insert(b, a);
}

std::vector<char32_t> KeyboardLayout::neighbors(char32_t c) const {
  if (auto it = adjacency_.find(c); it != adjacency_.end()) return it->second;
  const char32_t lower = unicode::to_lower(c);
  if (lower == c) return {};
  auto it = adjacency_.find(lower);
  if (it == adjacency_.end()) return {};
  std::vector<char32_t> out;
  out.reserve(it->second.size());
  for (char32_t n : it->second) out.push_back(unicode::to_upper(n));
  return out;
}

bool KeyboardLayout::adjacent(char32_t a, char32_t b) const {
  if (auto it = adjacency_.find(a); it != adjacency_.end()) {
    return std::binary_search(it->second.begin(), it->second.end(), b);
  }
  const char32_t la = unicode::to_lower(a);
  const char32_t lb = unicode::to_lower(b);
  if (la == a || lb == b) return false;
  auto it = adjacency_.find(la);
  return it != adjacency_.end() &&
         std::binary_search(it->second.begin(), it->second.end(), lb);
}

bool KeyboardLayout::is_symmetric() const {
  for (const auto& [key, ns] : adjacency_) {
    for (char32_t n : ns) {
      auto it = adjacency_.find(n);
      if (it == adjacency_.end() ||
          !std::binary_search(it->second.begin(), it->second.end(), key)) {
        return false;
      }
    }
  }
  return true;
}

std::map<char32_t, char32_t> NoiseProfile::default_accent_map() {
  const auto pairs = unicode::accent_pairs();
  return {pairs.begin(), pairs.end()};
}

void NoiseProfile::validate() const {
  for (Rule r : kAllRules) {
    check_probability(rule_probs[r], "rule_probs." + std::string(rule_name(r)));
  }
  for (const auto& [word, dist] : replacement_lexicon) {
    const std::string path = "replacement_lexicon." + word;
    if (dist.empty()) throw SchemaError(path, "empty distribution");
    double total = 0.0;
    for (const auto& [raw, p] : dist) {
      check_probability(p, path + "." + raw);
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw SchemaError(path, "probabilities sum to " + std::to_string(total));
    }
  }
  for (std::size_t i = 0; i < misc_rules.size(); ++i) {
    const std::string path = "misc_rules[" + std::to_string(i) + "]";
    check_probability(misc_rules[i].probability, path + ".probability");
    if (misc_rules[i].pattern.empty()) {
      throw SchemaError(path + ".pattern", "empty pattern");
    }
  }
  if (!keyboard.is_symmetric()) {
    throw SchemaError("keyboard", "adjacency is not symmetric");
  }
}

std::string save_profile(const NoiseProfile& profile) {
  json j;
  j["version"] = kProfileVersion;
  j["language"] = profile.language;
  json probs = json::object();
  for (Rule r : kAllRules) probs[std::string(rule_name(r))] = profile.rule_probs[r];
  j["rule_probs"] = std::move(probs);
  json lexicon = json::object();
  for (const auto& [word, dist] : profile.replacement_lexicon) {
    json d = json::object();
    for (const auto& [raw, p] : dist) d[raw] = p;
    lexicon[word] = std::move(d);
  }
  j["replacement_lexicon"] = std::move(lexicon);
  json misc = json::array();
  for (const auto& rule : profile.misc_rules) {
    misc.push_back({{"pattern", rule.pattern},
                    {"replacement", rule.replacement},
                    {"probability", rule.probability},
                    {"regex", rule.is_regex}});
  }
  j["misc_rules"] = std::move(misc);
  json keyboard = json::object();
  for (const auto& [key, ns] : profile.keyboard.adjacency()) {
    keyboard[utf8(key)] = utf8(ns);
  }
  j["keyboard"] = std::move(keyboard);
  json accents = json::object();
  for (const auto& [accented, base] : profile.accent_map) {
    accents[utf8(accented)] = utf8(base);
  }
  j["accent_map"] = std::move(accents);
  return j.dump(2) + "\n";
}

ProfileLoad load_profile(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("$", "expected an object");

  ProfileLoad out;
  NoiseProfile& p = out.profile;

  const json& version = require(j, "version", "$");
  if (!version.is_number_integer() || version.get<int>() != kProfileVersion) {
    throw SchemaError("version", "unsupported profile version");
  }
  p.language = get_string(require(j, "language", "$"), "language");

  const json& probs = require(j, "rule_probs", "$");
  if (!probs.is_object()) throw SchemaError("rule_probs", "expected an object");
  for (const auto& [key, value] : probs.items()) {
    const std::string path = "rule_probs." + key;
    auto rule = rule_from_name(key);
    if (!rule) throw SchemaError(path, "unknown rule");
    double v = get_number(value, path);
    check_probability(v, path);
    p.rule_probs[*rule] = v;
  }
  for (Rule r : kAllRules) {
    if (!probs.contains(std::string(rule_name(r)))) {
      out.warnings.push_back("rule_probs." + std::string(rule_name(r)) +
                             " missing; using 0");
    }
  }

  if (auto it = j.find("replacement_lexicon"); it != j.end()) {
    if (!it->is_object()) {
      throw SchemaError("replacement_lexicon", "expected an object");
    }
    for (const auto& [word, dist] : it->items()) {
      const std::string path = "replacement_lexicon." + word;
      if (!dist.is_object()) throw SchemaError(path, "expected an object");
      auto& entry = p.replacement_lexicon[word];
      for (const auto& [raw, prob] : dist.items()) {
        entry[raw] = get_number(prob, path + "." + raw);
      }
    }
  }

  if (auto it = j.find("misc_rules"); it != j.end()) {
    if (!it->is_array()) throw SchemaError("misc_rules", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "misc_rules[" + std::to_string(i) + "]";
      const json& r = (*it)[i];
      if (!r.is_object()) throw SchemaError(path, "expected an object");
      MiscRule rule;
      rule.pattern = get_string(require(r, "pattern", path), path + ".pattern");
      rule.replacement =
          get_string(require(r, "replacement", path), path + ".replacement");
      rule.probability =
          get_number(require(r, "probability", path), path + ".probability");
      if (auto re = r.find("regex"); re != r.end()) {
        if (!re->is_boolean()) throw SchemaError(path + ".regex", "expected a boolean");
        rule.is_regex = re->get<bool>();
      }
      p.misc_rules.push_back(std::move(rule));
    }
  }

  if (auto it = j.find("keyboard"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("keyboard", "expected an object");
    KeyboardLayout layout;
    for (const auto& [key, value] : it->items()) {
      const std::string path = "keyboard." + key;
      const char32_t k = get_char(key, path);
      auto ns = unicode::try_decode(get_string(value, path));
      if (!ns) throw SchemaError(path, "invalid UTF-8");
      auto& v = layout.mutable_adjacency()[k];
      v.assign(ns->begin(), ns->end());
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    p.keyboard = std::move(layout);
  } else {
    out.warnings.push_back("keyboard section missing; using built-in QWERTY");
  }

  if (auto it = j.find("accent_map"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("accent_map", "expected an object");
    p.accent_map.clear();
    for (const auto& [key, value] : it->items()) {
      const std::string path = "accent_map." + key;
      p.accent_map[get_char(key, path)] = get_char(get_string(value, path), path);
    }
  } else {
    out.warnings.push_back("accent_map section missing; using built-in table");
  }

  p.validate();
  return out;
}

ProfileLoad load_profile_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return load_profile(text);
}

}  // namespace lexnorm
