// Copyright (c) 2026 The ITN Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "itn_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "itn/error.hpp"
#include "itn/log.hpp"
#include "itn/pair_io.hpp"
#include "itn/version.hpp"
#include "itn_cli/commands.hpp"
#include "itn_cli/config.hpp"
#include "itn_cli/pipeline.hpp"
#include "itn_cli/synth.hpp"

namespace itn::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// State shared by every subcommand.
struct Common {
  DataFiles files;
  std::uint64_t seed = 17;
  std::string config;
  std::string log_level = "info";
};

struct Command {
  CLI::App* app = nullptr;
  std::set<std::string> path_keys;  // resolved against the config file's directory
  std::function<void()> run;
};

void AddCommon(Command& cmd, Common& common) {
  cmd.app->add_option("--config", common.config, "flat key = value file; flags take precedence");
  cmd.app->add_option("--seed", common.seed, "seed for every random choice")->capture_default_str();
  cmd.app->add_option("--grammar", common.files.grammar, "rewrite grammar (default: built in)");
  cmd.app->add_option("--lexicon", common.files.lexicon, "rewrite lexicon TSV (default: built in)");
  cmd.app->add_option("--patterns", common.files.patterns, "entity patterns (default: built in)");
  cmd.app->add_option("--log-level", common.log_level, "debug, info, warning or error")
      ->capture_default_str()
      ->check(CLI::IsMember({"debug", "info", "warning", "error"}));
  cmd.path_keys.insert({"grammar", "lexicon", "patterns"});
}

LogLevel ParseLogLevel(const std::string& name) {
  if (name == "debug") return LogLevel::kDebug;
  if (name == "warning") return LogLevel::kWarning;
  if (name == "error") return LogLevel::kError;
  return LogLevel::kInfo;
}

bool HasFlag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Appends `--key=value` for every config entry whose flag was not given on
// the command line.
std::vector<std::string> InjectConfig(std::vector<std::string> args,
                                      const std::map<std::string, Command>& commands) {
  auto sub = std::find_if(args.begin(), args.end(),
                          [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  if (sub == args.end() || !commands.count(*sub)) return args;
  const Command& cmd = commands.at(*sub);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::map<std::string, std::string> values;
  try {
    values = LoadFlatConfig(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path();
  for (const auto& [key, value] : values) {
    if (key == "config" || !cmd.app->get_option_no_throw("--" + key)) {
      throw UsageError(path + ": unknown key '" + key + "' for " + cmd.app->get_name());
    }
    if (HasFlag(args, "--" + key)) continue;
    std::string v = value;
    if (cmd.path_keys.count(key) && !v.empty() && std::filesystem::path(v).is_relative()) {
      v = (dir / v).string();
    }
    args.push_back("--" + key + "=" + v);
  }
  return args;
}

std::ostream& OutputOr(std::optional<std::ofstream>& file, const std::string& path,
                       std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.emplace(path, std::ios::binary);
  if (!*file) throw Error(ErrorCode::kIo, "cannot write " + path);
  return *file;
}

}  // namespace

std::string VersionString() {
  return "itn " + std::string(kToolkitVersion) + " (model format " +
         std::to_string(kModelFormatVersion) + ", pair format " +
         std::to_string(kPairFormatVersion) + ", label format " +
         std::to_string(kLabelFormatVersion) + ")";
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Inverse text normalization toolkit", "itn");
  app.set_version_flag("--version", VersionString());
  app.require_subcommand(1);
  Common common;
  std::map<std::string, Command> commands;
  auto add = [&](const std::string& name, const std::string& help) -> Command& {
    Command& cmd = commands[name];
    cmd.app = app.add_subcommand(name, help);
    AddCommon(cmd, common);
    return cmd;
  };
  auto resources = [&] { return LoadedResources(common.files); };

  // augment
  std::string in_path, out_path;
  AugmentConfig aug;
  std::size_t threads = 1;
  std::string stats_path;
  bool no_trace = false;
  {
    Command& c = add("augment", "generate spoken/written pairs from written text");
    c.app->add_option("--in", in_path, "written corpus, one sentence per line")->required();
    c.app->add_option("--out", out_path, "pairs JSONL")->required();
    c.app->add_option("--n", aug.n_variants_per_sentence, "variants per sentence")
        ->capture_default_str();
    c.app->add_option("--max-expansions", aug.max_expansions_per_entity,
                      "spoken forms kept per entity")
        ->capture_default_str();
    c.app->add_option("--threads", threads, "worker threads")->capture_default_str();
    c.app->add_option("--stats", stats_path, "write augmentation statistics as JSON");
    c.app->add_flag("--no-trace", no_trace, "omit generation traces from the pairs");
    c.path_keys.insert({"in", "out", "stats"});
    c.run = [&] {
      aug.seed = common.seed;
      aug.keep_trace = !no_trace;
      auto res = resources();
      AugmentStats stats = AugmentFile(in_path, out_path, aug, res.view(), threads);
      ITN_LOG(kInfo) << "wrote " << stats.pairs << " pairs from " << stats.lines << " lines ("
                     << stats.skipped_lines << " skipped)";
      if (!stats_path.empty()) {
        std::ofstream s(stats_path, std::ios::binary);
        s << stats.ToJson() << '\n';
        if (!s) throw Error(ErrorCode::kIo, "cannot write " + stats_path);
      }
    };
  }

  // build-vocab
  std::vector<std::string> corpus_paths;
  std::size_t vocab_size = 4096;
  {
    Command& c = add("build-vocab", "train the subword vocabulary");
    c.app->add_option("--corpus", corpus_paths, "pairs JSONL or written text files")
        ->required()
        ->delimiter(',');
    c.app->add_option("--size", vocab_size, "target number of pieces")->capture_default_str();
    c.app->add_option("--out", out_path, "vocabulary TSV")->required();
    c.path_keys.insert({"corpus", "out"});
    c.run = [&] {
      auto res = resources();
      BuildVocabFile(corpus_paths, vocab_size, out_path, res.view(), common.seed);
    };
  }

  // infer-labels
  std::string mode = "auto";
  {
    Command& c = add("infer-labels", "derive per-token labels for pairs");
    c.app->add_option("--pairs,--in", in_path, "pairs JSONL")->required();
    c.app->add_option("--out", out_path, "label TSV")->required();
    c.app->add_option("--mode", mode, "auto, trace or search")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "trace", "search"}));
    c.path_keys.insert({"pairs", "in", "out"});
    c.run = [&] {
      auto res = resources();
      LabelMode m = mode == "trace"    ? LabelMode::kTrace
                    : mode == "search" ? LabelMode::kSearch
                                       : LabelMode::kAuto;
      std::size_t skipped = InferLabelsFile(in_path, out_path, m, res.lexicon());
      if (skipped) {
        ITN_LOG(kWarning) << skipped << " pairs could not be labeled";
      }
    };
  }

  // apply-labels
  std::string labels_path;
  {
    Command& c = add("apply-labels", "render written text from a label file");
    c.app->add_option("--labels", labels_path, "label TSV")->required();
    c.app->add_option("--out", out_path, "output text (default: standard output)");
    c.path_keys.insert({"labels", "out"});
    c.run = [&] {
      auto res = resources();
      std::optional<std::ofstream> file;
      ApplyLabelsFile(labels_path, OutputOr(file, out_path, out), res.lexicon());
    };
  }

  // train
  TrainOptions train;
  std::vector<double> task_weights;
  auto add_tagger_options = [&](Command& c) {
    TaggerConfig& t = train.tagger;
    c.app->add_option("--embed-dim", t.embed_dim)->capture_default_str();
    c.app->add_option("--hidden-dim", t.hidden_dim, "both directions together")
        ->capture_default_str();
    c.app->add_option("--layers", t.layers)->capture_default_str();
    c.app->add_option("--head-hidden", t.head_hidden)->capture_default_str();
    c.app->add_option("--task-weights", task_weights,
                      "five loss weights: rewrite,prepend,space,post_start,post_end")
        ->delimiter(',')
        ->expected(5);
    c.app->add_option("--learning-rate", t.learning_rate)->capture_default_str();
    c.app->add_option("--epochs", t.epochs, "pretraining epochs")->capture_default_str();
    c.app->add_option("--finetune-epochs", t.finetune_epochs)->capture_default_str();
    c.app->add_option("--batch-size", t.batch_size)->capture_default_str();
    c.app->add_option("--patience", t.patience)->capture_default_str();
    c.app->add_option("--validation-fraction", t.validation_fraction)->capture_default_str();
    c.app->add_option("--clip-norm", t.clip_norm)->capture_default_str();
    c.app->add_option("--lm-epochs", train.embeddings.epochs, "embedding pretraining epochs")
        ->capture_default_str();
    c.app->add_option("--lm-negatives", train.embeddings.negatives)->capture_default_str();
    c.app->add_option("--lm-learning-rate", train.embeddings.learning_rate)
        ->capture_default_str();
  };
  auto finish_tagger = [&] {
    train.tagger.seed = common.seed;
    if (!task_weights.empty()) {
      std::copy(task_weights.begin(), task_weights.end(), train.tagger.task_weights.begin());
    }
  };
  {
    Command& c = add("train", "train the multitask tagger");
    c.app->add_option("--pretrain", train.pretrain, "augmented source pairs JSONL");
    c.app->add_option("--finetune", train.finetune, "in-domain pairs JSONL");
    c.app->add_option("--general", train.general, "text for embedding pretraining");
    c.app->add_option("--vocab", train.vocab, "vocabulary TSV")->required();
    c.app->add_option("--out", train.out, "model file")->required();
    c.app->add_option("--log", train.log_path, "per-epoch JSON lines");
    add_tagger_options(c);
    c.path_keys.insert({"pretrain", "finetune", "general", "vocab", "out", "log"});
    c.run = [&] {
      finish_tagger();
      auto res = resources();
      TrainSummary s = TrainFile(train, res.view());
      ITN_LOG(kInfo) << "trained on " << s.pretrain_pairs << " + " << s.finetune_pairs
                     << " pairs; model file " << s.model_bytes << " bytes";
    };
  }

  // tag
  std::string model_path;
  {
    Command& c = add("tag", "convert spoken text to written text");
    c.app->add_option("--model", model_path, "model file")->required();
    c.app->add_option("--in", in_path, "spoken text, one sentence per line")->required();
    c.app->add_option("--out", out_path, "written hypotheses")->required();
    c.path_keys.insert({"model", "in", "out"});
    c.run = [&] {
      auto res = resources();
      std::size_t repaired = TagFile(model_path, in_path, out_path, res.lexicon());
      if (repaired) {
        ITN_LOG(kInfo) << repaired << " lines needed label repair";
      }
    };
  }

  // evaluate
  std::string ref_path, hyp_path, report_path;
  {
    Command& c = add("evaluate", "entity accuracy of hypotheses against references");
    c.app->add_option("--ref", ref_path, "reference written text")->required();
    c.app->add_option("--hyp", hyp_path, "hypothesis written text")->required();
    c.app->add_option("--report", report_path, "report JSON (default: standard output)");
    c.path_keys.insert({"ref", "hyp", "report"});
    c.run = [&] {
      AccuracyReport report = EvaluateFiles(ref_path, hyp_path);
      std::optional<std::ofstream> file;
      OutputOr(file, report_path, out) << report.ToJson() << '\n';
    };
  }

  // analyze-overlap
  std::string a_path, b_path, stopwords_path;
  std::vector<std::size_t> orders = {1, 2};
  std::size_t top_k = 10000;
  bool jaccard = false;
  {
    Command& c = add("analyze-overlap", "top-k n-gram overlap between two corpora");
    c.app->add_option("--a", a_path, "first corpus")->required();
    c.app->add_option("--b", b_path, "second corpus")->required();
    c.app->add_option("--n", orders, "n-gram orders")->delimiter(',')->capture_default_str();
    c.app->add_option("--topk", top_k)->capture_default_str();
    c.app->add_flag("--jaccard", jaccard, "divide by the union instead of top-k");
    c.app->add_option("--stopwords", stopwords_path, "stopword list (default: built in)");
    c.app->add_option("--out", out_path, "JSON table (default: standard output)");
    c.path_keys.insert({"a", "b", "stopwords", "out"});
    c.run = [&] {
      if (top_k == 0) throw std::invalid_argument("--topk must be positive");
      auto res = resources();
      std::set<std::string> stop =
          stopwords_path.empty() ? DefaultStopwords() : ParseStopwords(ReadFile(stopwords_path));
      std::string table = OverlapTable(ReadLinesFile(a_path), ReadLinesFile(b_path), orders,
                                       top_k, stop, jaccard, res.view(), common.seed);
      std::optional<std::ofstream> file;
      OutputOr(file, out_path, out) << table << '\n';
    };
  }

  // synth-corpus
  std::string domain;
  std::size_t size = 0;
  {
    Command& c = add("synth-corpus", "generate a synthetic written corpus");
    c.app->add_option("--domain", domain, "source, target or general")
        ->required()
        ->check(CLI::IsMember({"source", "target", "general"}));
    c.app->add_option("--size", size, "number of sentences")->required();
    c.app->add_option("--out", out_path, "output text (default: standard output)");
    c.path_keys.insert({"out"});
    c.run = [&] {
      if (size == 0) throw std::invalid_argument("--size must be positive");
      std::optional<std::ofstream> file;
      std::ostream& o = OutputOr(file, out_path, out);
      for (const auto& line : SynthCorpus(*ParseDomain(domain), size, common.seed)) {
        o << line << '\n';
      }
    };
  }

  // pipeline
  PipelineSettings pipe;
  {
    Command& c = add("pipeline", "augment, build vocabulary, train, tag and evaluate");
    c.app->add_option("--source", pipe.source, "written out-of-domain text")->required();
    c.app->add_option("--general", pipe.general, "written text for embedding pretraining");
    c.app->add_option("--finetune", pipe.finetune, "in-domain pairs JSONL")->required();
    c.app->add_option("--test", pipe.test, "held-out in-domain pairs JSONL")->required();
    c.app->add_option("--workdir", pipe.workdir, "output directory")->capture_default_str();
    c.app->add_option("--n", pipe.n_variants, "variants per source sentence")
        ->capture_default_str();
    c.app->add_option("--max-expansions", pipe.max_expansions)->capture_default_str();
    c.app->add_option("--vocab-size", pipe.vocab_size)->capture_default_str();
    c.app->add_option("--threads", pipe.threads)->capture_default_str();
    add_tagger_options(c);
    c.path_keys.insert({"source", "general", "finetune", "test", "workdir"});
    c.run = [&] {
      finish_tagger();
      pipe.train = train;
      auto res = resources();
      PipelineResult r = RunPipeline(pipe, res.view());
      out << r.report.ToJson() << '\n';
    };
  }

  try {
    std::vector<std::string> full = InjectConfig(args, commands);
    std::reverse(full.begin(), full.end());
    app.parse(full);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n";
    const CLI::App* help_for = &app;
    for (const auto& [name, cmd] : commands) {
      if (cmd.app->parsed()) help_for = cmd.app;
    }
    err << help_for->help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  SetLogLevel(ParseLogLevel(common.log_level));
  for (auto& [name, cmd] : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      cmd.run();
      return kExitOk;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n\n" << cmd.app->help();
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitDataError;
    }
  }
  return kExitUsage;
}

}  // namespace itn::cli
