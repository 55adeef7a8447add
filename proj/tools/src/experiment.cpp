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

#include "itn_cli/experiment.hpp"

#include <chrono>

#include "itn/error.hpp"
#include "itn/labels.hpp"
#include "itn/log.hpp"
#include "itn_cli/synth.hpp"

namespace itn::cli {

LabeledPairs AugmentAndLabel(const std::vector<std::string>& sentences, const AugmentConfig& config,
                             const Resources& res, std::uint64_t first_line) {
  LabeledPairs out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    ++out.stats.lines;
    std::vector<SpokenWrittenPair> pairs;
    try {
      pairs = AugmentSentence(sentences[i], config, res.grammar, res.patterns, first_line + i);
    } catch (const Error& e) {
      ++out.stats.skipped_lines;
      ITN_LOG(kWarning) << "line " << first_line + i + 1 << ": " << e.what();
      continue;
    }
    for (auto& pair : pairs) {
      try {
        auto rows = InferLabelsFromTrace(pair, res.lexicon);
        if (ApplyLabels(pair.spoken, rows, res.lexicon) != pair.written) continue;
        out.pairs.push_back(std::move(pair));
        out.rows.push_back(std::move(rows));
      } catch (const Error& e) {
        ITN_LOG(kDebug) << "unlabelable pair: " << e.what();
      }
    }
  }
  out.stats.pairs = out.pairs.size();
  return out;
}

std::vector<std::vector<std::string>> SpeakSentences(const std::vector<std::string>& lines,
                                                     const Resources& res, std::uint64_t seed) {
  AugmentConfig config;
  config.n_variants_per_sentence = 1;
  config.seed = seed;
  std::vector<std::vector<std::string>> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<SpokenWrittenPair> pairs;
    try {
      pairs = AugmentSentence(lines[i], config, res.grammar, res.patterns, i);
    } catch (const Error&) {
    }
    out.push_back(pairs.empty() ? SpokenizeText(lines[i]) : std::move(pairs.front().spoken));
  }
  return out;
}

std::vector<PieceExample> ToExamples(const PieceVocab& vocab, const LabeledPairs& data) {
  std::vector<PieceExample> out;
  out.reserve(data.pairs.size());
  for (std::size_t i = 0; i < data.pairs.size(); ++i) {
    out.push_back(MakePieceExample(vocab, data.pairs[i].spoken, data.rows[i]));
  }
  return out;
}

std::vector<std::string> TagCorpus(const TaggerModel<float>& model, const PieceVocab& vocab,
                                   const std::vector<std::vector<std::string>>& spoken,
                                   const RewriteLexicon& lexicon, std::size_t* repaired) {
  std::vector<std::string> out;
  out.reserve(spoken.size());
  std::size_t fixes = 0;
  for (const auto& words : spoken) {
    TagResult r = TagSentence(model, vocab, words, lexicon);
    fixes += r.repaired ? 1 : 0;
    out.push_back(std::move(r.written));
  }
  if (repaired) *repaired = fixes;
  return out;
}

ExperimentConfig::ExperimentConfig() {
  tagger.embed_dim = 32;
  tagger.hidden_dim = 96;
  tagger.layers = 2;
  tagger.head_hidden = 32;
  tagger.learning_rate = 3e-3;
  tagger.epochs = 12;
  tagger.finetune_epochs = 40;
  tagger.batch_size = 8;
  tagger.patience = 4;
}

namespace {

ArmResult Evaluate(TaggerModel<float>& model, const PieceVocab& vocab, const LabeledPairs& test,
                   const Resources& res, const TrainResult& trained) {
  std::vector<std::vector<std::string>> spoken;
  std::vector<std::string> refs;
  for (const auto& p : test.pairs) {
    spoken.push_back(p.spoken);
    refs.push_back(p.written);
  }
  ArmResult arm;
  arm.epochs = trained.log.size();
  auto hyps = TagCorpus(model, vocab, spoken, res.lexicon, &arm.repaired);
  arm.report = ScoreCorpus(refs, hyps);
  return arm;
}

}  // namespace

ExperimentResult RunDomainShift(const ExperimentConfig& config, const Resources& res) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = config.seed;
  auto source = SynthCorpus(Domain::kSource, config.source_sentences, seed);
  auto target = SynthCorpus(Domain::kTarget, config.target_train + config.target_test, seed);
  auto general = SynthCorpus(Domain::kGeneral, config.general_sentences, seed);

  ExperimentResult result;
  result.unigram_overlap = NgramOverlap(source, target, 1, 10000, DefaultStopwords());

  AugmentConfig aug;
  aug.seed = seed;
  aug.n_variants_per_sentence = config.source_variants;
  LabeledPairs source_pairs = AugmentAndLabel(source, aug, res);

  // One spoken rendering per target sentence stands in for a transcript.
  aug.n_variants_per_sentence = 1;
  std::vector<std::string> target_train(target.begin(),
                                        target.begin() + static_cast<long>(config.target_train));
  std::vector<std::string> target_test(target.begin() + static_cast<long>(config.target_train),
                                       target.end());
  LabeledPairs train_pairs = AugmentAndLabel(target_train, aug, res);
  LabeledPairs test_pairs = AugmentAndLabel(target_test, aug, res, config.target_train);

  std::vector<std::string> general_spoken;
  for (const auto& words : SpeakSentences(general, res, seed)) {
    general_spoken.push_back(JoinTokens(words));
  }
  std::vector<std::string> vocab_corpus = general_spoken;
  for (const auto& p : source_pairs.pairs) vocab_corpus.push_back(JoinTokens(p.spoken));
  for (const auto& p : train_pairs.pairs) vocab_corpus.push_back(JoinTokens(p.spoken));
  PieceVocab vocab = PieceVocab::Build(vocab_corpus, ProtectedWords(res.grammar, res.lexicon),
                                       config.vocab_size);

  std::vector<std::vector<int>> lm_corpus;
  for (const auto& line : general_spoken) lm_corpus.push_back(vocab.Encode(line));
  EmbeddingPretrainConfig emb = config.embeddings;
  emb.seed = seed;
  Eigen::MatrixXf embedding =
      PretrainEmbeddings(lm_corpus, vocab.size(), config.tagger.embed_dim, emb);

  auto source_examples = ToExamples(vocab, source_pairs);
  auto target_examples = ToExamples(vocab, train_pairs);

  TaggerConfig tc = config.tagger;
  tc.vocab_size = vocab.size();
  tc.seed = seed;

  TaggerModel<float> adapted(tc);
  adapted.InitRandom(seed);
  SetPretrainedEmbedding(adapted, embedding);
  auto adapted_log = TrainTagger(adapted, source_examples, target_examples);
  result.pretrain_finetune = Evaluate(adapted, vocab, test_pairs, res, adapted_log);

  TaggerModel<float> baseline(tc);
  baseline.InitRandom(seed);
  auto baseline_log = TrainTagger(baseline, {}, target_examples);
  result.finetune_only = Evaluate(baseline, vocab, test_pairs, res, baseline_log);

  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace itn::cli
