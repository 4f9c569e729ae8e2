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

#ifndef LEXNORM_MODEL_IO_H_
#define LEXNORM_MODEL_IO_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexnorm/corpus.h"
#include "lexnorm/random.h"

// Training examples for a byte-level sequence-to-sequence model.
//
// Word examples mark one raw token of a sentence with two sentinels and ask
// for its normalization:
//
//   input   "<extra_id_0>hw<extra_id_1> r u"
//   target  "how"
//
// Span-mask examples replace byte spans with sentinels and ask for the spans:
//
//   input   "The <extra_id_0> fox jumps<extra_id_1>"
//   target  "<extra_id_0>quick brown<extra_id_1> over the dog<extra_id_2>"
namespace lexnorm {

struct Seq2SeqExample {
  std::string input;
  std::string target;

  friend bool operator==(const Seq2SeqExample&, const Seq2SeqExample&) = default;
};

std::vector<std::string> default_sentinels(std::size_t count = 125);

// Default ids: pad 0, eos 1, unk 2, byte b -> b + 3 (3..258), sentinel i ->
// 259 + i.
struct EncodingConfig {
  std::vector<std::string> sentinel_literals = default_sentinels();
  int byte_id_offset = 3;
  int sentinel_id_base = 259;
  int eos_id = 1;
  int pad_id = 0;

  int vocab_size() const;
  // Throws DataError if id ranges overlap or a literal is empty.
  void validate() const;
};

// True if any sentinel literal occurs in `text`.
bool contains_sentinel(std::string_view text, const EncodingConfig& config);

// One example per raw token (merge continuations included, with an empty
// target). Throws DataError if a token contains a sentinel literal.
std::vector<Seq2SeqExample> build_word_examples(
    const Sentence& sentence, const EncodingConfig& config = {});

struct SpanMaskOptions {
  std::size_t mean_span = 20;
  double mask_ratio = 0.15;
};

// Masks max(1, round(mask_ratio * bytes)) bytes with non-overlapping,
// non-adjacent spans whose lengths are drawn from [mean_span - 5,
// mean_span + 5] and cut to the remaining budget. Spans start and end on
// UTF-8 character boundaries. Throws DataError if `text` has fewer than two
// characters or needs more sentinels than configured.
Seq2SeqExample build_span_mask_example(std::string_view text, Rng& rng,
                                       const SpanMaskOptions& options = {},
                                       const EncodingConfig& config = {});

// Inverse of build_span_mask_example(): splices the target spans back.
std::string reconstruct_span_mask(const Seq2SeqExample& example,
                                  const EncodingConfig& config = {});

struct EncodedExample {
  std::vector<int> input_ids;
  std::vector<int> target_ids;  // ends with eos_id

  friend bool operator==(const EncodedExample&, const EncodedExample&) = default;
};

std::vector<int> encode_text(std::string_view text, const EncodingConfig& config);
// Stops at eos_id; pad ids are skipped. Throws DataError on unknown ids.
std::string decode_text(std::span<const int> ids, const EncodingConfig& config);

EncodedExample encode_ids(const Seq2SeqExample& example,
                          const EncodingConfig& config = {});
Seq2SeqExample decode_ids(const EncodedExample& encoded,
                          const EncodingConfig& config = {});

enum class Source { kAuthentic, kSynthetic };

struct MixPick {
  Source source;
  std::size_t index;

  friend bool operator==(const MixPick&, const MixPick&) = default;
};

// Interleaves two streams with a seeded fair coin per item. The shorter
// stream restarts when it runs out; mixing ends once every item of the longer
// stream has been emitted. An empty stream is never drawn from, so an empty
// synthetic stream yields the authentic stream unchanged.
class StreamMixer {
 public:
  // Throws DataError if both streams are empty.
  StreamMixer(std::size_t authentic_size, std::size_t synthetic_size,
              std::uint64_t seed);

  std::optional<MixPick> next();

 private:
  std::size_t sizes_[2];
  std::size_t drawn_[2] = {0, 0};
  int longer_;
  Rng rng_;
};

std::vector<Seq2SeqExample> mix_streams(std::span<const Seq2SeqExample> authentic,
                                        std::span<const Seq2SeqExample> synthetic,
                                        std::uint64_t seed);

// JSON-lines interchange: {"input": ..., "target": ...} plus input_ids and
// target_ids when `ids` is given.
std::string example_to_json(const Seq2SeqExample& example,
                            const EncodingConfig* ids = nullptr);
Seq2SeqExample example_from_json(std::string_view line);

void write_jsonl(std::ostream& out, std::span<const Seq2SeqExample> examples,
                 const EncodingConfig* ids = nullptr);
std::vector<Seq2SeqExample> read_jsonl(std::istream& in);

}  // namespace lexnorm

#endif  // LEXNORM_MODEL_IO_H_
