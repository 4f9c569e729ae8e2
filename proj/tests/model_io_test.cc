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

#include <gtest/gtest.h>

#include <sstream>

#include "lexnorm/error.h"
#include "lexnorm/unicode.h"
#include "test_util.h"

namespace lexnorm {
namespace {

Sentence sentence(std::vector<std::pair<std::string, std::string>> tokens) {
  Sentence s;
  for (auto& [raw, norm] : tokens) s.tokens.push_back({raw, norm});
  return s;
}

std::size_t count(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

std::string strip(std::string text, const std::string& literal) {
  for (auto pos = text.find(literal); pos != std::string::npos;
       pos = text.find(literal)) {
    text.erase(pos, literal.size());
  }
  return text;
}

TEST(WordExamples, MarkEachToken) {
  const auto ex = build_word_examples(
      sentence({{"hw", "how"}, {"r", "are"}, {"u", "you"}}));
  ASSERT_EQ(ex.size(), 3u);
  EXPECT_EQ(ex[0].input, "<extra_id_0>hw<extra_id_1> r u");
  EXPECT_EQ(ex[0].target, "how");
  EXPECT_EQ(ex[1].input, "hw <extra_id_0>r<extra_id_1> u");
  EXPECT_EQ(ex[2].input, "hw r <extra_id_0>u<extra_id_1>");
  EXPECT_EQ(ex[2].target, "you");
}

TEST(WordExamples, SplitAndMergeTargets) {
  const auto ex = build_word_examples(
      sentence({{"dekeuken", "de keuken"}, {"some", "something"}, {"thing", ""}}));
  EXPECT_EQ(ex[0].target, "de keuken");
  EXPECT_EQ(ex[2].target, "");
}

TEST(WordExamples, StrippingSentinelsGivesRawSentence) {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const Dataset d = testing::random_dataset(rng, 2, 10);
    for (const auto& s : d.sentences) {
      const auto ex = build_word_examples(s);
      ASSERT_EQ(ex.size(), s.tokens.size());
      std::string joined;
      for (const auto& t : s.tokens) joined += (joined.empty() ? "" : " ") + t.raw;
      for (std::size_t k = 0; k < ex.size(); ++k) {
        ASSERT_EQ(count(ex[k].input, "<extra_id_0>"), 1u);
        ASSERT_EQ(count(ex[k].input, "<extra_id_1>"), 1u);
        ASSERT_LT(ex[k].input.find("<extra_id_0>"), ex[k].input.find("<extra_id_1>"));
        ASSERT_EQ(strip(strip(ex[k].input, "<extra_id_0>"), "<extra_id_1>"), joined);
        ASSERT_EQ(ex[k].target, s.tokens[k].norm);
      }
    }
  }
}

TEST(WordExamples, RejectsSentinelsInText) {
  EXPECT_THROW(build_word_examples(sentence({{"a<extra_id_3>", "a"}})), DataError);
}

TEST(SpanMask, TwoHundredBytes) {
  const std::string text(200, 'x');
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Seq2SeqExample e = build_span_mask_example(text, rng);
    const std::size_t spans = count(e.input, "<extra_id_");
    ASSERT_GE(spans, 1u);
    ASSERT_EQ(count(e.target, "<extra_id_"), spans + 1);
    const std::size_t masked = text.size() - (e.input.size() - spans * 12);
    ASSERT_GE(masked, 20u);
    ASSERT_LE(masked, 40u);
    ASSERT_EQ(reconstruct_span_mask(e), text);
  }
}

TEST(SpanMask, SingleSpanOnShortText) {
  const std::string text = "0123456789012345678901234567890123456789";
  Rng rng(4);
  const Seq2SeqExample e = build_span_mask_example(text, rng);
  EXPECT_EQ(count(e.input, "<extra_id_"), 1u);
  EXPECT_EQ(count(e.target, "<extra_id_"), 2u);
  EXPECT_EQ(count(e.target, "<extra_id_1>"), 1u);
}

TEST(SpanMask, SpansAreSeparatedAndOnCharacterBoundaries) {
  Rng gen(77);
  const auto& alphabet = testing::mixed_alphabet();
  for (int i = 0; i < 2000; ++i) {
    const std::string text = testing::random_word(gen, alphabet, 2, 150);
    Rng rng(static_cast<std::uint64_t>(i));
    SpanMaskOptions options;
    options.mean_span = 1 + uniform_below(gen, 25);
    options.mask_ratio = 0.05 + 0.5 * uniform01(gen);
    const Seq2SeqExample e = build_span_mask_example(text, rng, options);
    ASSERT_TRUE(unicode::is_valid_utf8(e.input));
    ASSERT_TRUE(unicode::is_valid_utf8(e.target));
    // Adjacent spans would put two sentinels next to each other.
    ASSERT_EQ(e.input.find("><extra_id_"), std::string::npos) << e.input;
    ASSERT_EQ(reconstruct_span_mask(e), text);
  }
}

TEST(SpanMask, Errors) {
  Rng rng(1);
  EXPECT_THROW(build_span_mask_example("x", rng), DataError);
  EXPECT_THROW(build_span_mask_example("é", rng), DataError);
  EXPECT_NO_THROW(build_span_mask_example("ab", rng));
  EXPECT_THROW(build_span_mask_example("a<extra_id_0>b", rng), DataError);
  EncodingConfig tiny;
  tiny.sentinel_literals = {"<X>", "<Y>"};
  EXPECT_THROW(build_span_mask_example(std::string(500, 'a'), rng, {}, tiny),
               DataError);
}

TEST(EncodeIds, ByteOffsetAndSentinels) {
  const EncodingConfig config;
  EXPECT_EQ(encode_text("A", config), std::vector<int>{68});
  EXPECT_EQ(encode_ids({"A", ""}, config).target_ids, std::vector<int>{1});
  EXPECT_EQ(encode_text("<extra_id_0>é<extra_id_12>", config),
            (std::vector<int>{259, 0xC3 + 3, 0xA9 + 3, 271}));
  EXPECT_EQ(config.vocab_size(), 384);
  EXPECT_NO_THROW(config.validate());
}

TEST(EncodeIds, RoundTripFuzz) {
  const EncodingConfig config;
  Rng rng(41);
  for (int i = 0; i < 2000; ++i) {
    Seq2SeqExample e;
    e.input = testing::random_word(rng, testing::mixed_alphabet(), 0, 30) +
              "<extra_id_0>" + testing::random_word(rng, testing::mixed_alphabet(), 0, 5);
    e.target = testing::random_word(rng, testing::mixed_alphabet(), 0, 10);
    const EncodedExample enc = encode_ids(e, config);
    for (int id : enc.input_ids) ASSERT_LT(id, config.vocab_size());
    ASSERT_EQ(enc.target_ids.back(), config.eos_id);
    ASSERT_EQ(decode_ids(enc, config), e);
  }
}

TEST(EncodeIds, DecodeErrorsAndPadding) {
  const EncodingConfig config;
  EXPECT_EQ(decode_text(std::vector<int>{68, 0, 69, 1, 70}, config), "AB");
  EXPECT_THROW(decode_text(std::vector<int>{2}, config), DataError);
  EXPECT_THROW(decode_text(std::vector<int>{999}, config), DataError);
}

TEST(EncodingConfig, Validation) {
  EncodingConfig c;
  c.sentinel_id_base = 100;
  EXPECT_THROW(c.validate(), DataError);
  c = EncodingConfig{};
  c.eos_id = 5;
  EXPECT_THROW(c.validate(), DataError);
  c = EncodingConfig{};
  c.sentinel_literals = {"<a>"};
  EXPECT_THROW(c.validate(), DataError);
}

TEST(MixStreams, FairCoin) {
  StreamMixer mixer(2'000'000, 2'000'000, 99);
  std::size_t authentic = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    authentic += mixer.next()->source == Source::kAuthentic;
  }
  EXPECT_NEAR(static_cast<double>(authentic) / 1e6, 0.5, 0.002);
}

TEST(MixStreams, CyclesShorterUntilLongerIsDone) {
  std::vector<Seq2SeqExample> a = {{"a0", ""}, {"a1", ""}};
  std::vector<Seq2SeqExample> s;
  for (int i = 0; i < 20; ++i) s.push_back({"s" + std::to_string(i), ""});
  const auto mixed = mix_streams(a, s, 3);
  std::size_t synthetic = 0;
  for (const auto& e : mixed) {
    if (e.input[0] == 's') {
      ASSERT_EQ(e.input, "s" + std::to_string(synthetic));
      ++synthetic;
    }
  }
  EXPECT_EQ(synthetic, 20u);
  EXPECT_EQ(mixed.back().input, "s19");
  EXPECT_EQ(mix_streams(a, s, 3), mixed);
}

TEST(MixStreams, EmptySyntheticIsPureAuthentic) {
  std::vector<Seq2SeqExample> a = {{"x", "1"}, {"y", "2"}, {"z", "3"}};
  EXPECT_EQ(mix_streams(a, {}, 5), a);
  EXPECT_THROW(StreamMixer(0, 0, 1), DataError);
}

TEST(Jsonl, RoundTrip) {
  std::vector<Seq2SeqExample> ex = {{"<extra_id_0>hw<extra_id_1> r", "how"},
                                    {"tab\tand \"quote\" é", ""}};
  std::stringstream buf;
  write_jsonl(buf, ex);
  EXPECT_EQ(read_jsonl(buf), ex);

  const EncodingConfig config;
  const std::string line = example_to_json({"A", "B"}, &config);
  EXPECT_EQ(line, R"({"input":"A","target":"B","input_ids":[68],"target_ids":[69,1]})");
  EXPECT_EQ(example_from_json(line), (Seq2SeqExample{"A", "B"}));
}

TEST(Jsonl, Errors) {
  std::istringstream bad("{\"input\":\"a\",\"target\":\"b\"}\n{\"input\":1}\n");
  try {
    read_jsonl(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(example_from_json("nope"), SchemaError);
}

}  // namespace
}  // namespace lexnorm
