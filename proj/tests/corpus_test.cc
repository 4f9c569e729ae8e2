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


#include "lexnorm/corpus.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "lexnorm/error.h"
#include "test_util.h"

namespace lexnorm {
namespace {

Dataset make(std::vector<std::vector<std::pair<std::string, std::string>>> s) {
  Dataset d{"en", {}};
  for (auto& sentence : s) {
    Sentence out;
    for (auto& [raw, norm] : sentence) out.tokens.push_back({raw, norm});
    d.sentences.push_back(std::move(out));
  }
  return d;
}

TEST(ParseDataset, TwoTokenSentence) {
  const Dataset d = parse_dataset("hw\thow\nr\tare\n\n", "en");
  ASSERT_EQ(d.sentences.size(), 1u);
  ASSERT_EQ(d.sentences[0].tokens.size(), 2u);
  EXPECT_EQ(d.sentences[0].tokens[0], (Token{"hw", "how"}));
  EXPECT_EQ(d.sentences[0].tokens[1], (Token{"r", "are"}));
  EXPECT_EQ(serialize_dataset(d), "hw\thow\nr\tare\n\n");
}

TEST(ParseDataset, SingleIdentityToken) {
  const Dataset d = parse_dataset("a\ta\n", "en");
  ASSERT_EQ(d.token_count(), 1u);
  EXPECT_EQ(summarize(d).pct_normalized, 0.0);
  // The missing sentence terminator is added on output.
  EXPECT_EQ(serialize_dataset(d), "a\ta\n\n");
}

TEST(ParseDataset, SplitAndMergeConventions) {
  const Dataset d =
      parse_dataset("dekeuken\tde keuken\nsome\tsomething\nthing\t\n\n", "nl");
  const auto& t = d.sentences[0].tokens;
  EXPECT_EQ(t[0].norm, "de keuken");
  EXPECT_FALSE(t[1].is_continuation());
  EXPECT_TRUE(t[2].is_continuation());
}

TEST(ParseDataset, ErrorsCarryLineNumbers) {
  auto line_of = [](std::string_view text) {
    try {
      parse_dataset(text, "en");
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("a\ta\nnotab\n"), 2u);
  EXPECT_EQ(line_of("a\ta\tb\n"), 1u);
  EXPECT_EQ(line_of("a\ta\n\n\tb\n"), 3u);
  EXPECT_EQ(line_of("a\ta\nb\t\xff\n"), 2u);
  EXPECT_EQ(line_of("a\t a\n"), 1u);
  EXPECT_EQ(line_of("a\ta \n"), 1u);
  EXPECT_EQ(line_of("a\ta  b\n"), 1u);
}

TEST(ParseDataset, WarnsOnLeadingContinuation) {
  std::vector<ParseWarning> warnings;
  const Dataset d = parse_dataset("x\ty\n\nz\t\n\n", "en", &warnings);
  EXPECT_EQ(d.sentences.size(), 2u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].line, 3u);
}

TEST(ParseDataset, ExtraBlankLinesCollapse) {
  const Dataset d = parse_dataset("\n\na\ta\n\n\n\nb\tb\n", "en");
  EXPECT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(serialize_dataset(d), "a\ta\n\nb\tb\n\n");
}

TEST(SerializeDataset, EmptyDataset) {
  EXPECT_EQ(serialize_dataset(Dataset{}), "");
  EXPECT_TRUE(parse_dataset("", "en").empty());
}

TEST(SerializeDataset, RoundTripFuzz) {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const Dataset d = testing::random_dataset(rng);
    const std::string bytes = serialize_dataset(d);
    const Dataset back = parse_dataset(bytes, d.language);
    ASSERT_EQ(back, d) << bytes;
    ASSERT_EQ(serialize_dataset(back), bytes);
  }
}

TEST(DatasetFile, WriteThenRead) {
  const auto path =
      (std::filesystem::temp_directory_path() / "lexnorm_corpus_test.tsv").string();
  const Dataset d = make({{{"u", "you"}, {"r", "are"}}, {{"ok", "ok"}}});
  write_dataset_file(path, d);
  EXPECT_EQ(read_dataset_file(path, "en"), d);
  std::remove(path.c_str());
  EXPECT_THROW(read_dataset_file(path, "en"), DataError);
}

Dataset numbered(std::size_t n) {
  Dataset d{"en", {}};
  for (std::size_t i = 0; i < n; ++i) {
    d.sentences.push_back({{{std::to_string(i), std::to_string(i)}}});
  }
  return d;
}

TEST(SplitDataset, SizesFollowFraction) {
  const Dataset d = numbered(100);
  auto [train, dev] = split_dataset(d, 0.10, 42);
  EXPECT_EQ(train.sentences.size(), 90u);
  EXPECT_EQ(dev.sentences.size(), 10u);
  auto [train3, dev3] = split_dataset(d, 0.03, 42);
  EXPECT_EQ(train3.sentences.size(), 97u);
  EXPECT_EQ(dev3.sentences.size(), 3u);
}

TEST(SplitDataset, AtLeastOneEachSide) {
  auto [train, dev] = split_dataset(numbered(5), 0.01, 1);
  EXPECT_EQ(dev.sentences.size(), 1u);
  auto [train2, dev2] = split_dataset(numbered(2), 0.99, 1);
  EXPECT_EQ(train2.sentences.size(), 1u);
  EXPECT_EQ(dev2.sentences.size(), 1u);
}

TEST(SplitDataset, DeterministicPartitionInOrder) {
  const Dataset d = numbered(57);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = split_dataset(d, 0.2, seed);
    auto b = split_dataset(d, 0.2, seed);
    EXPECT_EQ(a, b);
    std::set<int> seen;
    for (const Dataset* part : {&a.first, &a.second}) {
      int last = -1;
      for (const auto& s : part->sentences) {
        const int id = std::stoi(s.tokens[0].raw);
        EXPECT_GT(id, last);
        last = id;
        EXPECT_TRUE(seen.insert(id).second);
      }
    }
    EXPECT_EQ(seen.size(), 57u);
  }
}

TEST(SplitDataset, Errors) {
  EXPECT_THROW(split_dataset(numbered(1), 0.5, 1), DataError);
  EXPECT_THROW(split_dataset(numbered(10), 0.0, 1), std::invalid_argument);
  EXPECT_THROW(split_dataset(numbered(10), 1.0, 1), std::invalid_argument);
}

TEST(ConcatDatasets, IdentityAdditivityNeutral) {
  const Dataset a = make({{{"a", "a"}, {"b", "c"}}});
  const Dataset b = make({{{"x", "y"}}, {{"z", "z"}}});
  const Dataset empty{"en", {}};
  EXPECT_EQ(concat_datasets(std::vector{a}), a);
  EXPECT_EQ(concat_datasets(std::vector{a, b}).token_count(),
            a.token_count() + b.token_count());
  EXPECT_EQ(concat_datasets(std::vector{empty, a}), a);
  Dataset other = a;
  other.language = "nl";
  EXPECT_THROW(concat_datasets(std::vector{a, other}), DataError);
}

TEST(Summarize, Fractions) {
  std::vector<std::pair<std::string, std::string>> tokens;
  for (int i = 0; i < 20; ++i) {
    const std::string w = "w" + std::to_string(i);
    tokens.push_back({w, i < 3 ? w + "x" : w});
  }
  const CorpusSummary s = summarize(make({tokens}));
  EXPECT_EQ(s.word_count, 20u);
  EXPECT_DOUBLE_EQ(s.pct_normalized, 0.15);
  EXPECT_FALSE(s.has_split_merge);
  EXPECT_FALSE(s.has_caps_changes);

  std::vector<std::pair<std::string, std::string>> ten;
  for (int i = 0; i < 10; ++i) ten.push_back({"a", i == 4 ? "b" : "a"});
  EXPECT_DOUBLE_EQ(summarize(make({ten})).pct_normalized, 0.10);
}

TEST(Summarize, Flags) {
  EXPECT_TRUE(summarize(make({{{"dekeuken", "de keuken"}}})).has_split_merge);
  EXPECT_TRUE(
      summarize(make({{{"some", "something"}, {"thing", ""}}})).has_split_merge);
  EXPECT_TRUE(summarize(make({{{"paris", "Paris"}}})).has_caps_changes);
  EXPECT_THROW(summarize(Dataset{}), DataError);
  EXPECT_EQ(summarize(make({{{"a", "b"}}})).to_json(),
            R"({"word_count":1,"pct_normalized":1.0,"has_split_merge":false,)"
            R"("has_caps_changes":false})");
}

TEST(Summarize, FuzzInvariants) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Dataset d = testing::random_dataset(rng);
    if (d.token_count() == 0) continue;
    const CorpusSummary s = summarize(d);
    EXPECT_EQ(s.word_count, d.token_count());
    EXPECT_GE(s.pct_normalized, 0.0);
    EXPECT_LE(s.pct_normalized, 1.0);
  }
}

}  // namespace
}  // namespace lexnorm
