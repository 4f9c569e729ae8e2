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


#ifndef LEXNORM_EVALKIT_H_
#define LEXNORM_EVALKIT_H_

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lexnorm/corpus.h"
#include "lexnorm/error.h"

// Intrinsic evaluation of normalization systems.
//
// ERR (error reduction rate) rescales word accuracy so that leaving every
// word as is scores 0 and a perfect system scores 1:
//
//   ERR = (acc_system - acc_lai) / (1 - acc_lai)
namespace lexnorm {

// One predicted norm per raw token of a reference dataset, in file order.
using Predictions = std::vector<std::string>;

// ERR is undefined when the gold data contains no normalization.
class UndefinedMetricError : public DataError {
 public:
  using DataError::DataError;
};

// Throws AlignmentError naming the first index without a counterpart.
double word_accuracy(const Dataset& gold, const Predictions& pred,
                     bool caseless = false);
double err(const Dataset& gold, const Predictions& pred, bool caseless = false);
double macro_average(std::span<const double> values);

Predictions lai(const Dataset& gold);

struct MFRModel {
  // raw -> norm -> count
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  // raw -> most frequent norm; ties go to the smallest norm by code point.
  std::map<std::string, std::string> lexicon;
};

// Throws DataError on an empty training set.
MFRModel mfr_train(const Dataset& train);
// Raw forms unseen in training are left as is.
Predictions mfr_predict(const MFRModel& model, const Dataset& eval);

struct Candidate {
  std::string text;
  double logprob;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Scored normalization candidates for every token of a dataset, best first.
struct CandidateSet {
  std::vector<std::vector<Candidate>> tokens;

  // Throws AlignmentError for a token with no candidates, duplicate
  // candidates, a non-finite logprob or candidates out of order.
  void validate() const;
  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

// JSON lines, one token per line: {"i": 0, "c": [["you", -0.1], ...]}.
// "i" must count up from 0.
CandidateSet read_candidates(std::istream& in);
CandidateSet read_candidates_file(const std::string& path);
void write_candidates(std::ostream& out, const CandidateSet& set);

// Per token, averages the probabilities exp(logprob) of each model's top k
// candidates over all models (a candidate a model did not propose counts as
// 0) and predicts the best mean. Means within a relative 1e-12 of each other
// tie and go to the smallest candidate by code point. Throws AlignmentError
// if the sets cover different numbers of tokens.
Predictions ensemble(std::span<const CandidateSet> sets, std::size_t k = 16);

// Prediction files reuse the corpus TSV with the prediction in the norm
// column. Reading checks that the raw column matches `gold`.
Predictions predictions_from_dataset(const Dataset& gold, const Dataset& pred);
Dataset predictions_to_dataset(const Dataset& gold, const Predictions& pred);
Predictions read_predictions_file(const std::string& path, const Dataset& gold);

}  // namespace lexnorm

#endif  // LEXNORM_EVALKIT_H_
