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


#include "cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lexnorm/noise_profile.h"

namespace lexnorm::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lexnorm_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                                 ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
    return path(name);
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int lexnorm(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, Version) {
  EXPECT_EQ(lexnorm({"--version"}), kExitOk);
  EXPECT_EQ(out_.str(), "lexnorm 1.0.0\n");
}

TEST_F(CliTest, UsageErrorsNameTheOffendingToken) {
  EXPECT_EQ(lexnorm({}), kExitUsage);
  EXPECT_EQ(lexnorm({"frobnicate"}), kExitUsage);
  EXPECT_NE(err_.str().find("frobnicate"), std::string::npos);
  EXPECT_EQ(lexnorm({"summarize", "--bogus-flag"}), kExitUsage);
  EXPECT_NE(err_.str().find("--bogus-flag"), std::string::npos);
  EXPECT_EQ(lexnorm({"summarize", "-i", path("missing.tsv")}), kExitUsage);
  EXPECT_NE(err_.str().find("missing.tsv"), std::string::npos);
}

TEST_F(CliTest, EvaluatePerfectPrediction) {
  const std::string g = write("g.tsv", "u\tyou\nr\tare\nok\tok\n\n");
  ASSERT_EQ(lexnorm({"evaluate", "--gold", g, "--pred", g}), kExitOk) << err_.str();
  EXPECT_EQ(out_.str(), "{\"accuracy\":1.0,\"err\":1.0}\n");
}

TEST_F(CliTest, EvaluateMismatchIsDataError) {
  const std::string g = write("g.tsv", "u\tyou\nr\tare\nok\tok\n\n");
  const std::string p = write("p.tsv", "u\tyou\nr\tare\n\n");
  EXPECT_EQ(lexnorm({"evaluate", "--gold", g, "--pred", p}), kExitData);
  EXPECT_NE(err_.str().find("token 2"), std::string::npos) << err_.str();
  const std::string bad = write("bad.tsv", "no tab here\n");
  EXPECT_EQ(lexnorm({"evaluate", "--gold", g, "--pred", bad}), kExitData);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos);
}

TEST_F(CliTest, RefusesToOverwriteInputs) {
  const std::string t = write("t.txt", "some text\n");
  const std::string before = read(t);
  EXPECT_EQ(lexnorm({"clean", "-i", t, "-o", t}), kExitUsage);
  EXPECT_EQ(read(t), before);
}

TEST_F(CliTest, FullPipeline) {
  std::string text;
  for (int i = 0; i < 200; ++i) {
    text += "The café isn't open today, said Ana. It's closed until " +
            std::to_string(i) + " o'clock!\nHeading:\n";
  }
  const std::string dump = write("dump.txt", text);
  ASSERT_EQ(lexnorm({"clean", "-i", dump, "-o", path("clean.txt")}), kExitOk);
  ASSERT_EQ(lexnorm({"tokenize", "-i", path("clean.txt"), "-o", path("tok.txt")}),
            kExitOk);

  NoiseProfile p;
  p.language = "en";
  p.rule_probs[Rule::kStripApostrophe] = 0.5;
  p.rule_probs[Rule::kAccentRemoval] = 0.5;
  p.rule_probs[Rule::kMergeWords] = 0.05;
  const std::string profile = write("p.json", save_profile(p));
  for (const char* threads : {"1", "3"}) {
    ASSERT_EQ(lexnorm({"synthesize", "--profile", profile, "-i", path("tok.txt"),
                       "-o", path(std::string("syn") + threads + ".tsv"),
                       "--seed", "11", "--threads", threads}),
              kExitOk)
        << err_.str();
  }
  EXPECT_EQ(read(path("syn1.tsv")), read(path("syn3.tsv")));

  ASSERT_EQ(lexnorm({"estimate", "-i", path("syn1.tsv"), "--language", "en", "-o",
                     path("est.json")}),
            kExitOk)
      << err_.str();
  const NoiseProfile est = load_profile_file(path("est.json")).profile;
  EXPECT_NEAR(est.rule_probs[Rule::kStripApostrophe], 0.5, 0.1);
  EXPECT_NEAR(est.rule_probs[Rule::kAccentRemoval], 0.5, 0.1);

  ASSERT_EQ(lexnorm({"split", "-i", path("syn1.tsv"), "--train-out",
                     path("train.tsv"), "--dev-out", path("dev.tsv"), "--seed", "1"}),
            kExitOk);
  ASSERT_EQ(lexnorm({"mfr", "--train", path("train.tsv"), "-i", path("dev.tsv"),
                     "-o", path("mfr.tsv")}),
            kExitOk);
  ASSERT_EQ(lexnorm({"evaluate", "--gold", path("dev.tsv"), "--pred",
                     path("mfr.tsv")}),
            kExitOk);
  const auto metrics = nlohmann::json::parse(out_.str());
  EXPECT_GT(metrics["err"].get<double>(), 0.0);

  ASSERT_EQ(lexnorm({"summarize", "-i", path("syn1.tsv")}), kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(out_.str())["has_split_merge"].get<bool>());

  ASSERT_EQ(lexnorm({"make-examples", "-i", path("dev.tsv"), "-o",
                     path("word.jsonl"), "--ids"}),
            kExitOk);
  ASSERT_EQ(lexnorm({"make-examples", "--mode", "span", "-i", path("clean.txt"),
                     "-o", path("span.jsonl"), "--seed", "4"}),
            kExitOk);
  ASSERT_EQ(lexnorm({"make-examples", "-i", path("dev.tsv"), "-o",
                     path("mixed.jsonl"), "--mix", path("span.jsonl"), "--seed",
                     "4"}),
            kExitOk);
  std::istringstream lines(read(path("word.jsonl")));
  std::string first;
  std::getline(lines, first);
  EXPECT_TRUE(nlohmann::json::parse(first).contains("input_ids"));
}

TEST_F(CliTest, EnsembleCommand) {
  const std::string eval = write("e.tsv", "u\tyou\nr\tare\n\n");
  const std::string a = write(
      "a.jsonl", "{\"i\":0,\"c\":[[\"you\",-0.5108],[\"u\",-0.9163]]}\n"
                 "{\"i\":1,\"c\":[[\"are\",-0.1]]}\n");
  const std::string b = write(
      "b.jsonl", "{\"i\":0,\"c\":[[\"u\",-0.3567],[\"you\",-1.204]]}\n"
                 "{\"i\":1,\"c\":[[\"r\",-0.1]]}\n");
  ASSERT_EQ(lexnorm({"ensemble", a, b, "--input", eval, "--out", path("p.tsv")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(read(path("p.tsv")), "u\tu\nr\tare\n\n");
  const std::string short_file = write("c.jsonl", "{\"i\":0,\"c\":[[\"u\",0]]}\n");
  EXPECT_EQ(lexnorm({"ensemble", a, short_file, "--input", eval}), kExitData);
}

TEST_F(CliTest, ProfileDirectoryLookup) {
  fs::create_directories(dir_ / "profiles");
  NoiseProfile p;
  p.language = "nl";
  write("profiles/nl.json", save_profile(p));
  const std::string in = write("in.txt", "de keuken\n");
  ::setenv("LEXNORM_PROFILE_DIR", (dir_ / "profiles").c_str(), 1);
  EXPECT_EQ(lexnorm({"synthesize", "--profile", "nl", "-i", in}), kExitOk)
      << err_.str();
  EXPECT_EQ(out_.str(), "de\tde\nkeuken\tkeuken\n\n");
  EXPECT_EQ(lexnorm({"synthesize", "--profile", "fr", "-i", in}), kExitUsage);
  ::unsetenv("LEXNORM_PROFILE_DIR");
}

TEST_F(CliTest, ManifestRecordsRun) {
  const std::string g = write("g.tsv", "u\tyou\n\n");
  ASSERT_EQ(lexnorm({"--manifest", path("m.json"), "summarize", "-i", g}),
            kExitOk);
  const auto m = nlohmann::json::parse(read(path("m.json")));
  EXPECT_EQ(m["subcommand"], "summarize");
  EXPECT_EQ(m["version"], "1.0.0");
  EXPECT_EQ(m["inputs"][g], fnv1a_hex("u\tyou\n\n"));
  EXPECT_EQ(m["options"]["--input"], g);
  EXPECT_TRUE(m.contains("wall_time_s"));
}

TEST(Fnv1a, KnownValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace lexnorm::cli
