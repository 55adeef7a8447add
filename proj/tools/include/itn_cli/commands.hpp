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

#ifndef ITN_CLI_COMMANDS_HPP_
#define ITN_CLI_COMMANDS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "itn/eval.hpp"
#include "itn/extract.hpp"
#include "itn/grammar.hpp"
#include "itn/lexicon.hpp"
#include "itn/tagger.hpp"
#include "itn/verbalize.hpp"
#include "itn_cli/experiment.hpp"

namespace itn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDataError = 2;

// Grammar, lexicon and patterns from files, or the embedded defaults when a
// path is empty.
struct DataFiles {
  std::string grammar;
  std::string lexicon;
  std::string patterns;
};

class LoadedResources {
 public:
  explicit LoadedResources(const DataFiles& files);
  Resources view() const { return {*grammar_, *lexicon_, *patterns_}; }
  const RewriteLexicon& lexicon() const { return *lexicon_; }

 private:
  std::optional<Grammar> own_grammar_;
  std::optional<RewriteLexicon> own_lexicon_;
  std::optional<PatternSet> own_patterns_;
  const Grammar* grammar_ = nullptr;
  const RewriteLexicon* lexicon_ = nullptr;
  const PatternSet* patterns_ = nullptr;
};

// Sentences for vocabulary and embedding training. Files ending in .jsonl
// contribute the spoken side of each pair; other files are written text and
// are verbalized first.
std::vector<std::string> SpokenCorpus(const std::vector<std::string>& paths, const Resources& res,
                                      std::uint64_t seed);

AugmentStats AugmentFile(const std::string& in_path, const std::string& out_path,
                         const AugmentConfig& config, const Resources& res, std::size_t threads);

void BuildVocabFile(const std::vector<std::string>& corpus_paths, std::size_t size,
                    const std::string& out_path, const Resources& res, std::uint64_t seed);

enum class LabelMode { kAuto, kTrace, kSearch };

// Labels every pair and writes the label TSV; returns how many pairs could
// not be labeled (they are skipped with a warning).
std::size_t InferLabelsFile(const std::string& pairs_path, const std::string& out_path,
                            LabelMode mode, const RewriteLexicon& lexicon);

// Writes one written sentence per labeled sentence.
void ApplyLabelsFile(const std::string& labels_path, std::ostream& out,
                     const RewriteLexicon& lexicon);

struct TrainOptions {
  std::string pretrain;   // pairs JSONL, may be empty
  std::string finetune;   // pairs JSONL, may be empty
  std::string general;    // text for embedding pretraining, may be empty
  std::string vocab;
  std::string out;
  std::string log_path;   // per-epoch JSON lines, optional
  TaggerConfig tagger;
  EmbeddingPretrainConfig embeddings;
};

struct TrainSummary {
  std::size_t pretrain_pairs = 0;
  std::size_t finetune_pairs = 0;
  std::size_t unlabeled = 0;
  std::size_t model_bytes = 0;
  TrainResult result;
};

TrainSummary TrainFile(const TrainOptions& options, const Resources& res);

// Tags one spoken sentence per line; returns the number of repaired lines.
std::size_t TagFile(const std::string& model_path, const std::string& in_path,
                    const std::string& out_path, const RewriteLexicon& lexicon);

// Streams both files line by line.
AccuracyReport EvaluateFiles(const std::string& ref_path, const std::string& hyp_path);

// {"written": {"unigram": x, "bigram": y}, "spoken": {...}} for the requested
// orders; spoken columns compare verbalized versions of both corpora.
std::string OverlapTable(const std::vector<std::string>& a, const std::vector<std::string>& b,
                         const std::vector<std::size_t>& orders, std::size_t top_k,
                         const std::set<std::string>& stopwords, bool jaccard,
                         const Resources& res, std::uint64_t seed);

}  // namespace itn::cli

#endif  // ITN_CLI_COMMANDS_HPP_
