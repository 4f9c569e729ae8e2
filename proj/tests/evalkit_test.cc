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


#include "lexnorm/evalkit.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_util.h"

namespace lexnorm {
namespace {

Dataset ten_tokens_two_changed() {
  Dataset d{"en", {{}}};
  for (int i = 0; i < 10; ++i) {
    const std::string w = "w" + std::to_string(i);
    d.sentences[0].tokens.push_back({w, i < 2 ? w + "!" : w});
  }
  return d;
}

CandidateSet one_token(std::vector<Candidate> cands) {
  CandidateSet s;
  s.tokens.push_back(std::move(cands));
  return s;
}

TEST(WordAccuracy, Basics) {
  const Dataset gold = ten_tokens_two_changed();
  Predictions gold_pred;
  for (const auto& t : gold.sentences[0].tokens) gold_pred.push_back(t.norm);
  EXPECT_EQ(word_accuracy(gold, gold_pred), 1.0);
  EXPECT_DOUBLE_EQ(word_accuracy(gold, lai(gold)), 0.8);
}

TEST(WordAccuracy, Caseless) {
  const Dataset gold{"en", {{{{"hello", "hello"}}}}};
  EXPECT_EQ(word_accuracy(gold, {"Hello"}, true), 1.0);
  EXPECT_EQ(word_accuracy(gold, {"Hello"}, false), 0.0);
}

TEST(WordAccuracy, LengthMismatchNamesIndex) {
  const Dataset gold = ten_tokens_two_changed();
  try {
    word_accuracy(gold, Predictions(7, "x"));
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.index(), 7u);
  }
}

TEST(Err, Examples) {
  const Dataset gold = ten_tokens_two_changed();
  EXPECT_EQ(err(gold, lai(gold)), 0.0);
  Predictions pred = lai(gold);
  pred[0] = "w0!";
  EXPECT_DOUBLE_EQ(err(gold, pred), 0.5);
  pred[1] = "w1!";
  EXPECT_EQ(err(gold, pred), 1.0);
  // Breaking an unchanged word makes the system worse than leaving as is.
  Predictions bad = lai(gold);
  bad[5] = "oops";
  EXPECT_LT(err(gold, bad), 0.0);
}

TEST(Err, UndefinedWithoutNormalizations) {
  const Dataset gold{"en", {{{{"a", "a"}, {"b", "b"}}}}};
  EXPECT_EQ(word_accuracy(gold, lai(gold)), 1.0);
  EXPECT_THROW(err(gold, lai(gold)), UndefinedMetricError);
  // Case-only changes vanish under caseless comparison.
  const Dataset caps{"en", {{{{"paris", "Paris"}}}}};
  EXPECT_EQ(err(caps, {"Paris"}), 1.0);
  EXPECT_THROW(err(caps, {"Paris"}, true), UndefinedMetricError);
}

TEST(Err, AffineInAccuracy) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const Dataset gold = testing::random_dataset(rng, 3, 6);
    if (gold.token_count() == 0) continue;
    const Predictions base = lai(gold);
    Predictions gold_pred;
    for (const Token* t : flatten(gold)) gold_pred.push_back(t->norm);
    if (base == gold_pred) continue;
    const double acc_lai = word_accuracy(gold, base);
    Predictions pred = base;
    for (auto& p : pred) {
      if (uniform_below(rng, 2) == 0) p = "zz";
    }
    const double acc = word_accuracy(gold, pred);
    EXPECT_NEAR(err(gold, pred), (acc - acc_lai) / (1 - acc_lai), 1e-12);
  }
}

TEST(MacroAverage, ArithmeticMean) {
  const std::vector<double> v = {0.5, -0.25, 1.0};
  EXPECT_DOUBLE_EQ(macro_average(v), 1.25 / 3);
  EXPECT_THROW(macro_average({}), DataError);
}

TEST(Mfr, CountsAndTies) {
  Dataset train{"en", {{{{"u", "you"}, {"u", "you"}, {"u", "you"}, {"u", "u"}}},
                       {{{"gr8", "great"}, {"gr8", "grate"}}}}};
  const MFRModel m = mfr_train(train);
  EXPECT_EQ(m.lexicon.at("u"), "you");
  EXPECT_EQ(m.lexicon.at("gr8"), "grate");
  EXPECT_EQ(m.counts.at("u").at("you"), 3u);
  const Dataset eval{"en", {{{{"u", "?"}, {"xyzzy", "?"}, {"gr8", "?"}}}}};
  EXPECT_EQ(mfr_predict(m, eval), (Predictions{"you", "xyzzy", "grate"}));
  EXPECT_THROW(mfr_train(Dataset{}), DataError);
}

TEST(Mfr, TieBreaksByCodePoint) {
  // U+00E9 sorts after every ASCII letter; U+1F600 after U+00E9.
  Dataset train{"en", {{{{"x", "é"}, {"x", "z"}, {"y", "😀"}, {"y", "é"}}}}};
  const MFRModel m = mfr_train(train);
  EXPECT_EQ(m.lexicon.at("x"), "z");
  EXPECT_EQ(m.lexicon.at("y"), "é");
}

TEST(Ensemble, WorkedExample) {
  const CandidateSet a = one_token({{"you", std::log(0.6)}, {"u", std::log(0.4)}});
  const CandidateSet b = one_token({{"u", std::log(0.7)}, {"you", std::log(0.3)}});
  EXPECT_EQ(ensemble(std::vector{a, b}), Predictions{"u"});
  EXPECT_EQ(ensemble(std::vector{b, a}), Predictions{"u"});
  EXPECT_EQ(ensemble(std::vector{a}), Predictions{"you"});
}

TEST(Ensemble, AbsentCandidatesCountAsZero) {
  const CandidateSet a = one_token({{"x", std::log(0.5)}, {"y", std::log(0.4)}});
  const CandidateSet b = one_token({{"y", std::log(0.2)}, {"z", std::log(0.1)}});
  // x: 0.25, y: 0.30, z: 0.05
  EXPECT_EQ(ensemble(std::vector{a, b}), Predictions{"y"});
}

TEST(Ensemble, TopKAndTies) {
  const CandidateSet a = one_token({{"b", std::log(0.5)}, {"a", std::log(0.5)}});
  EXPECT_EQ(ensemble(std::vector{a}), Predictions{"a"});
  const CandidateSet c = one_token({{"p", -1.0}, {"q", -1.5}});
  const CandidateSet d = one_token({{"r", -0.1}, {"q", -0.2}});
  EXPECT_EQ(ensemble(std::vector{c, d}, 16), Predictions{"q"});
  EXPECT_EQ(ensemble(std::vector{c, d}, 1), Predictions{"r"});
}

TEST(Ensemble, Errors) {
  CandidateSet two = one_token({{"a", 0.0}});
  two.tokens.push_back({{"b", 0.0}});
  const CandidateSet one = one_token({{"a", 0.0}});
  EXPECT_THROW(ensemble(std::vector{one, two}), AlignmentError);
  EXPECT_THROW(ensemble(std::vector<CandidateSet>{}), DataError);
}

TEST(CandidateSet, Validation) {
  EXPECT_NO_THROW(one_token({{"a", -0.1}, {"b", -0.1}, {"c", -3}}).validate());
  EXPECT_THROW(one_token({}).validate(), AlignmentError);
  EXPECT_THROW(one_token({{"a", -1}, {"a", -2}}).validate(), AlignmentError);
  EXPECT_THROW(one_token({{"a", -2}, {"b", -1}}).validate(), AlignmentError);
  EXPECT_THROW(one_token({{"a", std::nan("")}}).validate(), AlignmentError);
  EXPECT_THROW(one_token({{"a", INFINITY}}).validate(), AlignmentError);
}

TEST(CandidateFile, RoundTripAndErrors) {
  CandidateSet s = one_token({{"you", -0.25}, {"u", -1.5}});
  s.tokens.push_back({{"de keuken", -0.5}});
  std::stringstream buf;
  write_candidates(buf, s);
  EXPECT_EQ(buf.str(),
            "{\"i\":0,\"c\":[[\"you\",-0.25],[\"u\",-1.5]]}\n"
            "{\"i\":1,\"c\":[[\"de keuken\",-0.5]]}\n");
  EXPECT_EQ(read_candidates(buf), s);

  std::istringstream skipped("{\"i\":0,\"c\":[[\"a\",0]]}\n{\"i\":2,\"c\":[[\"a\",0]]}\n");
  try {
    read_candidates(skipped);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream unsorted("{\"i\":0,\"c\":[[\"a\",-2],[\"b\",-1]]}\n");
  EXPECT_THROW(read_candidates(unsorted), AlignmentError);
}

TEST(PredictionFiles, RawColumnMustMatch) {
  const Dataset gold{"en", {{{{"u", "you"}, {"r", "are"}}}}};
  const Dataset pred = predictions_to_dataset(gold, {"you", "r"});
  EXPECT_EQ(predictions_from_dataset(gold, pred), (Predictions{"you", "r"}));
  Dataset wrong = pred;
  wrong.sentences[0].tokens[1].raw = "x";
  try {
    predictions_from_dataset(gold, wrong);
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  EXPECT_THROW(predictions_to_dataset(gold, {"a\tb", "c"}), AlignmentError);
}

}  // namespace
}  // namespace lexnorm
