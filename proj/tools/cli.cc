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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lexnorm/corpus.h"
#include "lexnorm/corruptor.h"
#include "lexnorm/error.h"
#include "lexnorm/estimate.h"
#include "lexnorm/evalkit.h"
#include "lexnorm/model_io.h"
#include "lexnorm/noise_profile.h"
#include "lexnorm/parallel.h"
#include "lexnorm/twokenizer.h"
#include "lexnorm/unicode.h"

#ifndef LEXNORM_VERSION
#define LEXNORM_VERSION "0.0.0"
#endif

namespace lexnorm::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr char kProfileDirEnv[] = "LEXNORM_PROFILE_DIR";
constexpr char kStdio[] = "-";

// Bad invocation detected after argument parsing; exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input = kStdio;
  std::string output = kStdio;
  std::string language = "und";
  unsigned threads = default_thread_count();
  std::uint64_t seed = 0;

  // clean / tokenize
  bool tsv = false;
  // estimate
  std::size_t min_count = 2;
  // synthesize
  std::string profile;
  int max_rules = 2;
  // make-examples
  std::string mode = "word";
  bool ids = false;
  std::string mix;
  std::size_t mean_span = 20;
  double mask_ratio = 0.15;
  // split
  double dev_fraction = 0.1;
  std::string train_out;
  std::string dev_out;
  // mfr / evaluate / ensemble
  std::string train;
  std::string gold;
  std::string pred;
  bool caseless = false;
  std::vector<std::string> candidates;
  std::size_t k = 16;
};

class Runner {
 public:
  Runner(const Options& options, std::ostream& out, std::ostream& err)
      : o_(options), out_(out), err_(err) {}

  void dispatch(const std::string& command);
  const Json& inputs() const { return inputs_; }

 private:
  void clean();
  void tokenize_text();
  void estimate();
  void synthesize();
  void make_examples();
  void split();
  void mfr();
  void evaluate();
  void ensemble_cmd();
  void summarize_cmd();

  // Reads a whole input ("-" is standard input) and records its digest.
  std::string read_input(const std::string& path);
  Dataset read_corpus(const std::string& path);
  void record_stream_digest(const std::string& path);
  // Writes `data` to `path` ("-" is standard output).
  void write_output(const std::string& path, std::string_view data);
  std::string resolve_profile(const std::string& name) const;
  void refuse_overwrite(std::initializer_list<std::string> inputs,
                        std::initializer_list<std::string> outputs) const;

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  Json inputs_ = Json::object();
};

std::string slurp(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool same_file(const std::string& a, const std::string& b) {
  if (a == kStdio || b == kStdio) return false;
  std::error_code ec;
  if (fs::exists(a, ec) && fs::exists(b, ec)) return fs::equivalent(a, b, ec);
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

void Runner::refuse_overwrite(std::initializer_list<std::string> inputs,
                              std::initializer_list<std::string> outputs) const {
  for (const auto& out : outputs) {
    for (const auto& in : inputs) {
      if (!in.empty() && !out.empty() && same_file(in, out)) {
        throw UsageError("output " + out + " is also an input");
      }
    }
  }
}

std::string Runner::read_input(const std::string& path) {
  std::string data;
  if (path == kStdio) {
    data = slurp(std::cin);
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open file");
    data = slurp(in);
  }
  inputs_[path] = fnv1a_hex(data);
  return data;
}

Dataset Runner::read_corpus(const std::string& path) {
  const std::string data = read_input(path);
  std::vector<ParseWarning> warnings;
  Dataset dataset;
  try {
    dataset = parse_dataset(data, o_.language, &warnings);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
  for (const auto& w : warnings) {
    err_ << path << ": line " << w.line << ": warning: " << w.message << '\n';
  }
  return dataset;
}

void Runner::record_stream_digest(const std::string& path) {
  if (path == kStdio) {
    inputs_[path] = nullptr;
    return;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open file");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h = (h ^ static_cast<unsigned char>(buf[i])) * 0x100000001b3ULL;
    }
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << h;
  inputs_[path] = hex.str();
}

void Runner::write_output(const std::string& path, std::string_view data) {
  if (path == kStdio) {
    out_ << data;
    out_.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(path + ": cannot open file for writing");
  out << data;
  if (!out.flush()) throw DataError(path + ": write failed");
}

std::string Runner::resolve_profile(const std::string& name) const {
  std::error_code ec;
  if (fs::is_regular_file(name, ec)) return name;
  if (const char* dir = std::getenv(kProfileDirEnv); dir != nullptr && *dir) {
    for (const std::string& candidate :
         {name, name + ".json"}) {
      const fs::path p = fs::path(dir) / candidate;
      if (fs::is_regular_file(p, ec)) return p.string();
    }
  }
  throw UsageError("--profile: no such profile: " + name);
}

void Runner::dispatch(const std::string& command) {
  if (command == "clean") return clean();
  if (command == "tokenize") return tokenize_text();
  if (command == "estimate") return estimate();
  if (command == "synthesize") return synthesize();
  if (command == "make-examples") return make_examples();
  if (command == "split") return split();
  if (command == "mfr") return mfr();
  if (command == "evaluate") return evaluate();
  if (command == "ensemble") return ensemble_cmd();
  if (command == "summarize") return summarize_cmd();
  throw UsageError("unknown subcommand " + command);
}

void Runner::clean() {
  refuse_overwrite({o_.input}, {o_.output});
  CleanStats stats;
  const auto lines = clean_lines(std::string_view(read_input(o_.input)), &stats);
  std::string text;
  for (const auto& line : lines) {
    text += line;
    text += '\n';
  }
  write_output(o_.output, text);
  err_ << "clean: kept " << stats.lines_kept << " of " << stats.lines_read
       << " lines (" << stats.invalid_utf8 << " with invalid UTF-8)\n";
}

void Runner::tokenize_text() {
  refuse_overwrite({o_.input}, {o_.output});
  const std::string data = read_input(o_.input);
  std::istringstream in(data);
  Dataset dataset{o_.language, {}};
  std::string text;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!unicode::is_valid_utf8(line)) {
      throw DataError(o_.input + ": line " + std::to_string(line_no) +
                      ": invalid UTF-8");
    }
    for (const auto& sentence : segment_sentences(line)) {
      const TokenizedSentence tokens = tokenize(sentence);
      if (tokens.empty()) continue;
      if (o_.tsv) {
        Sentence s;
        for (const auto& t : tokens) s.tokens.push_back({t, t});
        dataset.sentences.push_back(std::move(s));
      } else {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          if (i > 0) text += ' ';
          text += tokens[i];
        }
        text += '\n';
      }
    }
  }
  write_output(o_.output, o_.tsv ? serialize_dataset(dataset) : text);
}

void Runner::estimate() {
  refuse_overwrite({o_.input}, {o_.output});
  const Dataset dataset = read_corpus(o_.input);
  EstimationOptions options;
  options.min_count = o_.min_count;
  options.threads = o_.threads;
  const NoiseProfile profile = estimate_profile(dataset, options);
  write_output(o_.output, save_profile(profile));
}

void Runner::synthesize() {
  const std::string profile_path = resolve_profile(o_.profile);
  refuse_overwrite({o_.input, profile_path}, {o_.output});
  const std::string profile_json = read_input(profile_path);
  ProfileLoad load;
  try {
    load = load_profile(profile_json);
  } catch (const DataError& e) {
    throw DataError(profile_path + ": " + e.what());
  }
  for (const auto& w : load.warnings) {
    err_ << profile_path << ": warning: " << w << '\n';
  }
  CorruptionConfig config;
  config.seed = o_.seed;
  config.max_rules_per_word = o_.max_rules;

  record_stream_digest(o_.input);
  std::ifstream file_in;
  if (o_.input != kStdio) {
    file_in.open(o_.input, std::ios::binary);
    if (!file_in) throw DataError(o_.input + ": cannot open file");
  }
  std::istream& in = o_.input == kStdio ? std::cin : file_in;
  std::ofstream file_out;
  if (o_.output != kStdio) {
    file_out.open(o_.output, std::ios::binary | std::ios::trunc);
    if (!file_out) throw DataError(o_.output + ": cannot open file for writing");
  }
  std::ostream& out = o_.output == kStdio ? out_ : file_out;

  const auto start = std::chrono::steady_clock::now();
  SynthesisStats stats;
  try {
    stats = synthesize_stream(in, out, load.profile, config, o_.threads);
  } catch (const ParseError& e) {
    throw DataError(o_.input + ": " + e.what());
  }
  if (!out.flush()) throw DataError(o_.output + ": write failed");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  err_ << "synthesize: " << stats.sentences << " sentences, " << stats.words
       << " words";
  if (seconds > 0) {
    err_ << ", " << static_cast<long long>(stats.words / seconds) << " words/s";
  }
  err_ << '\n';
}

void Runner::make_examples() {
  refuse_overwrite({o_.input, o_.mix}, {o_.output});
  EncodingConfig encoding;
  std::vector<Seq2SeqExample> examples;
  if (o_.mode == "word") {
    const Dataset dataset = read_corpus(o_.input);
    for (const auto& s : dataset.sentences) {
      auto built = build_word_examples(s, encoding);
      examples.insert(examples.end(), std::make_move_iterator(built.begin()),
                      std::make_move_iterator(built.end()));
    }
  } else {
    SpanMaskOptions options;
    options.mean_span = o_.mean_span;
    options.mask_ratio = o_.mask_ratio;
    const std::string data = read_input(o_.input);
    std::istringstream in(data);
    std::string line;
    std::size_t index = 0;
    std::size_t skipped = 0;
    while (std::getline(in, line)) {
      if (!unicode::is_valid_utf8(line)) {
        throw DataError(o_.input + ": line " + std::to_string(index + 1) +
                        ": invalid UTF-8");
      }
      Rng rng = make_rng(o_.seed, index++);
      if (unicode::length(line) < 2) {
        ++skipped;
        continue;
      }
      examples.push_back(build_span_mask_example(line, rng, options, encoding));
    }
    if (skipped > 0) {
      err_ << "make-examples: skipped " << skipped
           << " lines shorter than two characters\n";
    }
  }
  if (!o_.mix.empty()) {
    std::istringstream in(read_input(o_.mix));
    std::vector<Seq2SeqExample> synthetic;
    try {
      synthetic = read_jsonl(in);
    } catch (const DataError& e) {
      throw DataError(o_.mix + ": " + e.what());
    }
    examples = mix_streams(examples, synthetic, o_.seed);
  }
  std::ostringstream out;
  write_jsonl(out, examples, o_.ids ? &encoding : nullptr);
  write_output(o_.output, out.str());
  err_ << "make-examples: " << examples.size() << " examples\n";
}

void Runner::split() {
  refuse_overwrite({o_.input}, {o_.train_out, o_.dev_out});
  if (same_file(o_.train_out, o_.dev_out) || o_.train_out == o_.dev_out) {
    throw UsageError("--train-out and --dev-out name the same file");
  }
  const Dataset dataset = read_corpus(o_.input);
  auto [train, dev] = split_dataset(dataset, o_.dev_fraction, o_.seed);
  write_output(o_.train_out, serialize_dataset(train));
  write_output(o_.dev_out, serialize_dataset(dev));
  err_ << "split: " << train.sentences.size() << " train, "
       << dev.sentences.size() << " dev sentences\n";
}

void Runner::mfr() {
  refuse_overwrite({o_.train, o_.input}, {o_.output});
  const Dataset train = read_corpus(o_.train);
  const Dataset eval = read_corpus(o_.input);
  const MFRModel model = mfr_train(train);
  const Predictions pred = mfr_predict(model, eval);
  write_output(o_.output, serialize_dataset(predictions_to_dataset(eval, pred)));
}

void Runner::evaluate() {
  const Dataset gold = read_corpus(o_.gold);
  const Dataset pred_data = read_corpus(o_.pred);
  const Predictions pred = predictions_from_dataset(gold, pred_data);
  Json j;
  j["accuracy"] = word_accuracy(gold, pred, o_.caseless);
  j["err"] = err(gold, pred, o_.caseless);
  out_ << j.dump() << '\n';
}

void Runner::ensemble_cmd() {
  std::vector<std::string> inputs = o_.candidates;
  inputs.push_back(o_.input);
  for (const auto& in : inputs) refuse_overwrite({in}, {o_.output});
  const Dataset eval = read_corpus(o_.input);
  std::vector<CandidateSet> sets;
  for (const auto& path : o_.candidates) {
    std::istringstream in(read_input(path));
    try {
      sets.push_back(read_candidates(in));
    } catch (const DataError& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  const Predictions pred = ensemble(sets, o_.k);
  write_output(o_.output, serialize_dataset(predictions_to_dataset(eval, pred)));
}

void Runner::summarize_cmd() {
  const Dataset dataset = read_corpus(o_.input);
  out_ << summarize(dataset).to_json() << '\n';
}

// "-" or an existing regular file.
const CLI::Validator kInputFile(
    [](std::string& path) -> std::string {
      if (path == kStdio) return {};
      std::error_code ec;
      if (!fs::is_regular_file(path, ec)) return "no such file: " + path;
      return {};
    },
    "FILE");

Json option_values(const CLI::App& sub) {
  Json options = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help") continue;
    const std::string name = opt->get_name();
    if (opt->count() > 0 && opt->get_expected_max() > 1) {
      options[name] = opt->results();
    } else if (opt->count() > 0) {
      options[name] = opt->get_expected_max() == 0 ? "true" : opt->results().back();
    } else if (opt->get_expected_max() == 0) {
      options[name] = "false";
    } else {
      options[name] = opt->get_default_str();
    }
  }
  return options;
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ULL;
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  std::string manifest_path;

  CLI::App app("Lexical normalization toolkit", "lexnorm");
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", "lexnorm " LEXNORM_VERSION);
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--manifest", manifest_path,
                 "Write the run manifest (JSON) here instead of stderr");

  auto input = [&](CLI::App* sub, const char* help, bool required = false) {
    auto* opt = sub->add_option("-i,--input", o.input, help)->check(kInputFile);
    if (required) opt->required();
    return opt;
  };
  auto output = [&](CLI::App* sub, const char* help) {
    return sub->add_option("-o,--output", o.output, help);
  };
  auto language = [&](CLI::App* sub) {
    return sub->add_option("--language", o.language,
                           "Language code of corpus inputs");
  };
  auto threads = [&](CLI::App* sub) {
    return sub->add_option("--threads", o.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
  };
  auto seed = [&](CLI::App* sub) {
    return sub->add_option("--seed", o.seed, "Random seed");
  };

  auto* clean = app.add_subcommand("clean", "Keep long, complete text lines");
  input(clean, "Plain text");
  output(clean, "Cleaned text");

  auto* tok = app.add_subcommand(
      "tokenize", "Split lines into sentences and tokenize them");
  input(tok, "Plain text, one paragraph per line");
  output(tok, "One space-separated sentence per line");
  tok->add_flag("--tsv", o.tsv, "Write corpus TSV with identity norms");
  language(tok);

  auto* est = app.add_subcommand(
      "estimate", "Estimate a noise profile from an annotated corpus");
  input(est, "Corpus TSV", true);
  output(est, "Profile JSON");
  language(est);
  est->add_option("--min-count", o.min_count,
                  "Minimum norm frequency for lexicon entries");
  threads(est);

  auto* syn = app.add_subcommand(
      "synthesize", "Corrupt tokenized clean text into a synthetic corpus");
  syn->add_option("--profile", o.profile,
                  "Profile file, or a name looked up in $LEXNORM_PROFILE_DIR")
      ->required();
  input(syn, "Tokenized text, one sentence per line");
  output(syn, "Corpus TSV");
  seed(syn);
  threads(syn);
  syn->add_option("--max-rules", o.max_rules,
                  "Maximum character-level rules applied per word")
      ->check(CLI::NonNegativeNumber);

  auto* mk = app.add_subcommand("make-examples",
                                "Build seq2seq training examples as JSONL");
  input(mk, "Corpus TSV (word mode) or plain text lines (span mode)", true);
  output(mk, "Examples JSONL");
  mk->add_option("--mode", o.mode, "Example kind")
      ->check(CLI::IsMember({"word", "span"}));
  mk->add_flag("--ids", o.ids, "Add encoded input_ids/target_ids");
  mk->add_option("--mix", o.mix, "Synthetic examples JSONL to mix in 1:1")
      ->check(kInputFile);
  seed(mk);
  mk->add_option("--mean-span", o.mean_span, "Mean masked span length (bytes)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  mk->add_option("--mask-ratio", o.mask_ratio, "Fraction of bytes to mask")
      ->check(CLI::Range(0.0, 1.0));
  language(mk);

  auto* sp = app.add_subcommand("split", "Split a corpus into train and dev");
  input(sp, "Corpus TSV", true);
  sp->add_option("--dev-fraction", o.dev_fraction, "Share of dev sentences")
      ->check(CLI::Range(0.0, 1.0));
  seed(sp);
  sp->add_option("--train-out", o.train_out, "Train TSV")->required();
  sp->add_option("--dev-out", o.dev_out, "Dev TSV")->required();
  language(sp);

  auto* mfr = app.add_subcommand(
      "mfr", "Predict with the most-frequent-replacement baseline");
  mfr->add_option("--train", o.train, "Training corpus TSV")
      ->required()
      ->check(kInputFile);
  input(mfr, "Corpus TSV to normalize", true);
  output(mfr, "Predictions TSV");
  language(mfr);

  auto* ev = app.add_subcommand("evaluate", "Print word accuracy and ERR");
  ev->add_option("--gold", o.gold, "Gold corpus TSV")
      ->required()
      ->check(kInputFile);
  ev->add_option("--pred", o.pred, "Predictions TSV")
      ->required()
      ->check(kInputFile);
  ev->add_flag("--caseless", o.caseless, "Compare case-insensitively");
  language(ev);

  auto* ens = app.add_subcommand(
      "ensemble", "Combine candidate files by mean probability");
  ens->add_option("candidates", o.candidates, "Candidate JSONL files")
      ->required()
      ->check(kInputFile);
  input(ens, "Corpus TSV the candidates refer to", true);
  ens->add_option("-o,--output,--out", o.output, "Predictions TSV");
  ens->add_option("--k", o.k, "Candidates used per model")
      ->check(CLI::PositiveNumber);
  language(ens);

  auto* sum = app.add_subcommand("summarize", "Print corpus statistics");
  input(sum, "Corpus TSV", true);
  language(sum);

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      app.get_subcommand_no_throw(args[0]) == nullptr) {
    err << "lexnorm: unknown subcommand '" << args[0] << "'\n"
        << "Run with --help for more information.\n";
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Requirements are checked before leftovers; an unknown flag is the
    // more useful thing to report.
    const std::vector<std::string> extras = app.remaining(true);
    if (dynamic_cast<const CLI::RequiredError*>(&e) != nullptr && !extras.empty()) {
      err << "lexnorm: unrecognized argument '" << extras.front() << "'\n"
          << "Run with --help for more information.\n";
      return kExitUsage;
    }
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Runner runner(o, out, err);
  int status = kExitOk;
  try {
    runner.dispatch(command);
  } catch (const UsageError& e) {
    err << "lexnorm " << command << ": " << e.what() << '\n';
    status = kExitUsage;
  } catch (const std::exception& e) {
    err << "lexnorm " << command << ": error: " << e.what() << '\n';
    status = kExitData;
  }

  Json manifest;
  manifest["subcommand"] = command;
  manifest["options"] = option_values(*sub);
  manifest["inputs"] = runner.inputs();
  if (sub->get_option_no_throw("--seed") != nullptr) {
    manifest["seed"] = o.seed;
  }
  manifest["version"] = LEXNORM_VERSION;
  manifest["exit_status"] = status;
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (manifest_path.empty()) {
    err << "manifest: " << manifest.dump() << '\n';
  } else {
    std::ofstream mf(manifest_path, std::ios::trunc);
    mf << manifest.dump(2) << '\n';
    if (!mf) {
      err << "lexnorm: cannot write manifest " << manifest_path << '\n';
      if (status == kExitOk) status = kExitData;
    }
  }
  return status;
}

}  // namespace lexnorm::cli
