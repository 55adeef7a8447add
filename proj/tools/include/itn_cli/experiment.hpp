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

#ifndef ITN_CLI_EXPERIMENT_HPP_
#define ITN_CLI_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "itn/eval.hpp"
#include "itn/extract.hpp"
#include "itn/grammar.hpp"
#include "itn/lexicon.hpp"
#include "itn/tagger.hpp"
#include "itn/tokenize.hpp"
#include "itn/types.hpp"
#include "itn/verbalize.hpp"

namespace itn::cli {

struct Resources {
  const Grammar& grammar;
  const RewriteLexicon& lexicon;
  const PatternSet& patterns;
};

// Augments every sentence and keeps the pairs whose trace yields labels
// that replay to the written form.
struct LabeledPairs {
  std::vector<SpokenWrittenPair> pairs;
  std::vector<std::vector<LabelRow>> rows;
  AugmentStats stats;
};
LabeledPairs AugmentAndLabel(const std::vector<std::string>& sentences, const AugmentConfig& config,
                             const Resources& res, std::uint64_t first_line = 0);

// One sampled spoken rendering per written line, so numbers appear as number
// words. Lines without a usable entity fall back to plain lowercasing.
std::vector<std::vector<std::string>> SpeakSentences(const std::vector<std::string>& lines,
                                                     const Resources& res, std::uint64_t seed);

std::vector<PieceExample> ToExamples(const PieceVocab& vocab, const LabeledPairs& data);

// Tags every spoken sentence and returns the written hypotheses.
std::vector<std::string> TagCorpus(const TaggerModel<float>& model, const PieceVocab& vocab,
                                   const std::vector<std::vector<std::string>>& spoken,
                                   const RewriteLexicon& lexicon, std::size_t* repaired = nullptr);

// Domain-shift comparison: a tagger pretrained on augmented source pairs
// (with language-model embeddings) and finetuned on a few target pairs,
// against the same architecture trained on the target pairs alone.
struct ExperimentConfig {
  std::size_t source_sentences = 800;
  std::size_t general_sentences = 1500;
  std::size_t target_train = 60;
  std::size_t target_test = 200;
  std::size_t source_variants = 4;
  std::size_t vocab_size = 600;
  TaggerConfig tagger;  // architecture and schedule; seed overridden per run
  EmbeddingPretrainConfig embeddings;
  std::uint64_t seed = 17;

  ExperimentConfig();
};

struct ArmResult {
  AccuracyReport report;
  std::size_t repaired = 0;
  std::size_t epochs = 0;
};

struct ExperimentResult {
  ArmResult pretrain_finetune;
  ArmResult finetune_only;
  double unigram_overlap = 0;  // written source vs target, percent
  double seconds = 0;
};

ExperimentResult RunDomainShift(const ExperimentConfig& config, const Resources& res);

}  // namespace itn::cli

#endif  // ITN_CLI_EXPERIMENT_HPP_
