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

#ifndef LEXNORM_CORRUPTOR_H_
#define LEXNORM_CORRUPTOR_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexnorm/corpus.h"
#include "lexnorm/noise_profile.h"
#include "lexnorm/random.h"
#include "lexnorm/twokenizer.h"

// Synthesizes noisy text from clean text by applying a NoiseProfile.
// Output tokens carry the corrupted form as raw and the clean word as norm.
namespace lexnorm {

inline constexpr std::string_view kRuleOrderV1 = "v1";

struct CorruptionConfig {
  std::uint64_t seed = 0;
  // Identifies the rule pipeline below; only "v1" exists.
  std::string rule_order = std::string(kRuleOrderV1);
  // Cap on how many of the character-level rules (misc through repeat) may
  // change a single word.
  int max_rules_per_word = 2;
};

struct WordCorruption {
  std::vector<std::string> raw_tokens;
  std::string norm;
  std::vector<std::string> applied_rules;
};

// Tag values reported in WordCorruption::applied_rules besides rule_name().
inline constexpr std::string_view kLexiconTag = "lexicon";
inline constexpr std::string_view kMiscTag = "misc";

// Word pipeline, in order:
//   1. lexicon replacement (a non-identity draw ends the pipeline)
//   2. misc rules, in listed order
//   3. accent removal, per accented character
//   4. lowercase the first letter
//   5. strip apostrophes, per apostrophe
//   6. Indonesian plural "X-X..." -> "X2..."
//   7. drop every non-initial vowel
//   8. keep a prefix of length 2..n-2 (words of 4+ characters)
//   9. typos, per character: skip, insert a neighbor, substitute a
//      neighbor, or swap with the next character
//  10. repeat one character 1-3 extra times
// At most max_rules_per_word of steps 2-10 change the word.
class Corruptor {
 public:
  explicit Corruptor(NoiseProfile profile, int max_rules_per_word = 2);

  // Throws DataError for an empty word or one containing whitespace.
  WordCorruption corrupt_word(std::string_view word, Rng& rng) const;

  // Merges adjacent pairs, splits words, then corrupts the rest. A merged
  // pair becomes one token "w1w2" with norm "w1 w2"; a split word becomes
  // "left" (norm = word) followed by "right" (norm = "").
  Sentence corrupt_sentence(std::span<const std::string> words, Rng& rng) const;

  const NoiseProfile& profile() const { return profile_; }

 private:
  struct LexiconEntry {
    std::vector<std::string> forms;
    std::vector<double> cumulative;
  };

  std::string sample_lexicon(const LexiconEntry& entry, Rng& rng) const;
  bool apply_misc(std::string& word, Rng& rng) const;

  NoiseProfile profile_;
  int max_rules_per_word_;
  std::map<std::string, LexiconEntry, std::less<>> lexicon_;
  std::vector<std::shared_ptr<const std::regex>> misc_regex_;
};

WordCorruption corrupt_word(std::string_view word, const NoiseProfile& profile,
                            Rng& rng);
Sentence corrupt_sentence(std::span<const std::string> words,
                          const NoiseProfile& profile, Rng& rng);

// Sentence i is corrupted with make_rng(config.seed, i), so the result does
// not depend on `threads`.
Dataset synthesize(std::span<const TokenizedSentence> clean,
                   const NoiseProfile& profile, const CorruptionConfig& config,
                   unsigned threads = 1);

struct SynthesisStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
};

// Streaming variant: reads one space-separated tokenized sentence per line
// (blank lines are skipped and do not consume an index) and writes corpus
// TSV. Works in batches so memory stays bounded.
SynthesisStats synthesize_stream(std::istream& clean, std::ostream& tsv,
                                 const NoiseProfile& profile,
                                 const CorruptionConfig& config,
                                 unsigned threads = 1,
                                 std::size_t batch_size = 4096);

// Splits a line on ASCII whitespace.
TokenizedSentence split_tokens(std::string_view line);

}  // namespace lexnorm

#endif  // LEXNORM_CORRUPTOR_H_
