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

#include "lexnorm/model_io.h"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <utility>

#include "json.hpp"
#include "lexnorm/error.h"
#include "lexnorm/unicode.h"

namespace lexnorm {
namespace {

struct Piece {
  int sentinel;  // -1 for plain text
  std::string_view text;
};

std::bitset<256> first_bytes(const EncodingConfig& config) {
  std::bitset<256> set;
  for (const auto& lit : config.sentinel_literals) {
    if (!lit.empty()) set.set(static_cast<unsigned char>(lit.front()));
  }
  return set;
}

// Length of the longest sentinel literal starting at `pos`, 0 if none.
std::size_t sentinel_at(std::string_view text, std::size_t pos,
                        const EncodingConfig& config, int& index) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < config.sentinel_literals.size(); ++i) {
    const std::string& lit = config.sentinel_literals[i];
    if (lit.size() > best && text.compare(pos, lit.size(), lit) == 0) {
      best = lit.size();
      index = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<Piece> split_on_sentinels(std::string_view text,
                                      const EncodingConfig& config) {
  const auto starts = first_bytes(config);
  std::vector<Piece> pieces;
  std::size_t plain = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    int index = -1;
    std::size_t len = 0;
    if (starts.test(static_cast<unsigned char>(text[i]))) {
      len = sentinel_at(text, i, config, index);
    }
    if (len == 0) {
      ++i;
      continue;
    }
    if (i > plain) pieces.push_back({-1, text.substr(plain, i - plain)});
    pieces.push_back({index, text.substr(i, len)});
    i += len;
    plain = i;
  }
  if (text.size() > plain) pieces.push_back({-1, text.substr(plain)});
  return pieces;
}

bool is_continuation_byte(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

}  // namespace

std::vector<std::string> default_sentinels(std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back("<extra_id_" + std::to_string(i) + ">");
  }
  return out;
}

int EncodingConfig::vocab_size() const {
  const int sentinel_end =
      sentinel_id_base + static_cast<int>(sentinel_literals.size());
  return std::max({byte_id_offset + 256, sentinel_end, eos_id + 1, pad_id + 1});
}

void EncodingConfig::validate() const {
  if (sentinel_literals.size() < 2) {
    throw DataError("at least two sentinel literals are required");
  }
  for (const auto& lit : sentinel_literals) {
    if (lit.empty()) throw DataError("empty sentinel literal");
  }
  if (byte_id_offset < 0 || sentinel_id_base < 0 || eos_id < 0 || pad_id < 0) {
    throw DataError("ids must be non-negative");
  }
  const int sentinel_end =
      sentinel_id_base + static_cast<int>(sentinel_literals.size());
  auto in_bytes = [&](int id) {
    return id >= byte_id_offset && id < byte_id_offset + 256;
  };
  auto in_sentinels = [&](int id) {
    return id >= sentinel_id_base && id < sentinel_end;
  };
  if (eos_id == pad_id || in_bytes(eos_id) || in_sentinels(eos_id) ||
      in_bytes(pad_id) || in_sentinels(pad_id)) {
    throw DataError("eos/pad ids collide with other ids");
  }
  if (sentinel_id_base < byte_id_offset + 256 &&
      byte_id_offset < sentinel_end) {
    throw DataError("byte ids and sentinel ids overlap");
  }
}

bool contains_sentinel(std::string_view text, const EncodingConfig& config) {
  const auto starts = first_bytes(config);
  for (std::size_t i = 0; i < text.size(); ++i) {
    int index;
    if (starts.test(static_cast<unsigned char>(text[i])) &&
        sentinel_at(text, i, config, index) > 0) {
      return true;
    }
  }
  return false;
}

std::vector<Seq2SeqExample> build_word_examples(const Sentence& sentence,
                                                const EncodingConfig& config) {
  const auto& tokens = sentence.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (contains_sentinel(tokens[i].raw, config) ||
        contains_sentinel(tokens[i].norm, config)) {
      throw AlignmentError(i, "token contains a sentinel literal");
    }
  }
  const std::string& open = config.sentinel_literals.at(0);
  const std::string& close = config.sentinel_literals.at(1);

  std::vector<std::size_t> offsets;
  std::string joined;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) joined += ' ';
    offsets.push_back(joined.size());
    joined += tokens[i].raw;
  }

  std::vector<Seq2SeqExample> examples;
  examples.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::size_t begin = offsets[i];
    const std::size_t end = begin + tokens[i].raw.size();
    Seq2SeqExample e;
    e.input.reserve(joined.size() + open.size() + close.size());
    e.input.append(joined, 0, begin);
    e.input += open;
    e.input.append(joined, begin, end - begin);
    e.input += close;
    e.input.append(joined, end, std::string::npos);
    e.target = tokens[i].norm;
    examples.push_back(std::move(e));
  }
  return examples;
}

Seq2SeqExample build_span_mask_example(std::string_view text, Rng& rng,
                                       const SpanMaskOptions& options,
                                       const EncodingConfig& config) {
  if (!unicode::is_valid_utf8(text)) throw DataError("invalid UTF-8");
  if (unicode::length(text) < 2) {
    throw DataError("text too short to host a masked span");
  }
  if (!(options.mask_ratio > 0.0 && options.mask_ratio < 1.0)) {
    throw DataError("mask ratio must lie in (0, 1)");
  }
  if (contains_sentinel(text, config)) {
    throw DataError("text contains a sentinel literal");
  }
  const std::size_t n = text.size();
  auto budget = static_cast<std::size_t>(
      std::llround(options.mask_ratio * static_cast<double>(n)));
  budget = std::clamp<std::size_t>(budget, 1, n - 1);
  const auto mean = static_cast<std::int64_t>(options.mean_span);
  const std::int64_t lo = std::max<std::int64_t>(1, mean - 5);
  const std::int64_t hi = std::max<std::int64_t>(lo, mean + 5);

  // next_boundary[i]: smallest character boundary >= i.
  std::vector<std::size_t> next_boundary(n + 1, n);
  for (std::size_t i = n; i-- > 0;) {
    next_boundary[i] = is_continuation_byte(text[i]) ? next_boundary[i + 1] : i;
  }

  std::vector<std::uint8_t> masked(n, 0);
  std::vector<std::size_t> blocked_prefix(n + 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  std::size_t total = 0;
  while (total < budget) {
    const auto want = std::min<std::size_t>(
        static_cast<std::size_t>(uniform_between(rng, lo, hi)), budget - total);
    // A byte next to a masked byte is blocked too, which keeps spans apart.
    for (std::size_t i = 0; i < n; ++i) {
      const bool blocked = masked[i] || (i > 0 && masked[i - 1]) ||
                           (i + 1 < n && masked[i + 1]);
      blocked_prefix[i + 1] = blocked_prefix[i] + (blocked ? 1 : 0);
    }
    candidates.clear();
    for (std::size_t s = 0; s < n; ++s) {
      if (is_continuation_byte(text[s])) continue;
      const std::size_t e = next_boundary[std::min(n, s + want)];
      if (e <= s || total + (e - s) >= n) continue;
      if (blocked_prefix[e] == blocked_prefix[s]) candidates.emplace_back(s, e);
    }
    if (candidates.empty()) break;
    const auto [s, e] = candidates[uniform_below(rng, candidates.size())];
    std::fill(masked.begin() + static_cast<std::ptrdiff_t>(s),
              masked.begin() + static_cast<std::ptrdiff_t>(e), 1);
    spans.emplace_back(s, e);
    total += e - s;
  }
  if (spans.empty()) throw DataError("text too short to host a masked span");
  if (spans.size() + 1 > config.sentinel_literals.size()) {
    throw DataError("span masking needs " + std::to_string(spans.size() + 1) +
                    " sentinels, only " +
                    std::to_string(config.sentinel_literals.size()) +
                    " configured");
  }
  std::sort(spans.begin(), spans.end());

  Seq2SeqExample example;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const auto [s, e] = spans[k];
    example.input.append(text.substr(pos, s - pos));
    example.input += config.sentinel_literals[k];
    example.target += config.sentinel_literals[k];
    example.target.append(text.substr(s, e - s));
    pos = e;
  }
  example.input.append(text.substr(pos));
  example.target += config.sentinel_literals[spans.size()];
  return example;
}

std::string reconstruct_span_mask(const Seq2SeqExample& example,
                                  const EncodingConfig& config) {
  std::vector<std::string> fills;
  int expected = 0;
  for (const Piece& p : split_on_sentinels(example.target, config)) {
    if (p.sentinel >= 0) {
      if (p.sentinel != expected++) {
        throw DataError("target sentinels out of order");
      }
      fills.emplace_back();
    } else {
      if (fills.empty()) {
        throw DataError("target does not start with a sentinel");
      }
      fills.back().append(p.text);
    }
  }
  std::string out;
  expected = 0;
  for (const Piece& p : split_on_sentinels(example.input, config)) {
    if (p.sentinel < 0) {
      out.append(p.text);
      continue;
    }
    if (p.sentinel != expected ||
        static_cast<std::size_t>(p.sentinel) >= fills.size()) {
      throw DataError("input sentinels do not match the target");
    }
    out += fills[static_cast<std::size_t>(p.sentinel)];
    ++expected;
  }
  return out;
}

std::vector<int> encode_text(std::string_view text,
                             const EncodingConfig& config) {
  std::vector<int> ids;
  ids.reserve(text.size());
  for (const Piece& p : split_on_sentinels(text, config)) {
    if (p.sentinel >= 0) {
      ids.push_back(config.sentinel_id_base + p.sentinel);
      continue;
    }
    for (char c : p.text) {
      ids.push_back(static_cast<unsigned char>(c) + config.byte_id_offset);
    }
  }
  return ids;
}

std::string decode_text(std::span<const int> ids, const EncodingConfig& config) {
  std::string out;
  const int sentinels = static_cast<int>(config.sentinel_literals.size());
  for (int id : ids) {
    if (id == config.eos_id) break;
    if (id == config.pad_id) continue;
    if (id >= config.byte_id_offset && id < config.byte_id_offset + 256) {
      out.push_back(static_cast<char>(id - config.byte_id_offset));
    } else if (id >= config.sentinel_id_base &&
               id < config.sentinel_id_base + sentinels) {
      out += config.sentinel_literals[static_cast<std::size_t>(
          id - config.sentinel_id_base)];
    } else {
      throw DataError("id " + std::to_string(id) + " is outside the vocabulary");
    }
  }
  return out;
}

EncodedExample encode_ids(const Seq2SeqExample& example,
                          const EncodingConfig& config) {
  EncodedExample out;
  out.input_ids = encode_text(example.input, config);
  out.target_ids = encode_text(example.target, config);
  out.target_ids.push_back(config.eos_id);
  return out;
}

Seq2SeqExample decode_ids(const EncodedExample& encoded,
                          const EncodingConfig& config) {
  return {decode_text(encoded.input_ids, config),
          decode_text(encoded.target_ids, config)};
}

StreamMixer::StreamMixer(std::size_t authentic_size,
                         std::size_t synthetic_size, std::uint64_t seed)
    : sizes_{authentic_size, synthetic_size},
      longer_(synthetic_size > authentic_size ? 1 : 0),
      rng_(mix64(seed)) {
  if (authentic_size == 0 && synthetic_size == 0) {
    throw DataError("cannot mix two empty streams");
  }
}

std::optional<MixPick> StreamMixer::next() {
  if (drawn_[longer_] >= sizes_[longer_]) return std::nullopt;
  int source;
  if (sizes_[0] == 0) {
    source = 1;
  } else if (sizes_[1] == 0) {
    source = 0;
  } else {
    source = bernoulli(rng_, 0.5) ? 0 : 1;
  }
  const std::size_t index = drawn_[source]++ % sizes_[source];
  return MixPick{source == 0 ? Source::kAuthentic : Source::kSynthetic, index};
}

std::vector<Seq2SeqExample> mix_streams(
    std::span<const Seq2SeqExample> authentic,
    std::span<const Seq2SeqExample> synthetic, std::uint64_t seed) {
  StreamMixer mixer(authentic.size(), synthetic.size(), seed);
  std::vector<Seq2SeqExample> out;
  while (auto pick = mixer.next()) {
    out.push_back(pick->source == Source::kAuthentic ? authentic[pick->index]
                                                     : synthetic[pick->index]);
  }
  return out;
}

std::string example_to_json(const Seq2SeqExample& example,
                            const EncodingConfig* ids) {
  nlohmann::ordered_json j;
  j["input"] = example.input;
  j["target"] = example.target;
  if (ids != nullptr) {
    const EncodedExample enc = encode_ids(example, *ids);
    j["input_ids"] = enc.input_ids;
    j["target_ids"] = enc.target_ids;
  }
  return j.dump();
}

Seq2SeqExample example_from_json(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("$", "expected an object");
  Seq2SeqExample e;
  const std::pair<const char*, std::string*> fields[] = {
      {"input", &e.input}, {"target", &e.target}};
  for (const auto& [key, field] : fields) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      throw SchemaError(key, "missing or not a string");
    }
    *field = it->get<std::string>();
  }
  return e;
}

void write_jsonl(std::ostream& out, std::span<const Seq2SeqExample> examples,
                 const EncodingConfig* ids) {
  for (const auto& e : examples) out << example_to_json(e, ids) << '\n';
}

std::vector<Seq2SeqExample> read_jsonl(std::istream& in) {
  std::vector<Seq2SeqExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(example_from_json(line));
    } catch (const SchemaError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

}  // namespace lexnorm
