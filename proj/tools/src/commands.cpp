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

#include "itn_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "itn/error.hpp"
#include "itn/labels.hpp"
#include "itn/log.hpp"
#include "itn/pair_io.hpp"
#include "itn/tokenize.hpp"
#include "json.hpp"

namespace itn::cli {
namespace {

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

void CheckWritten(std::ostream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

bool IsPairFile(const std::string& path) {
  return std::filesystem::path(path).extension() == ".jsonl";
}

std::vector<LabelRow> LabelPair(const SpokenWrittenPair& pair, LabelMode mode,
                                const RewriteLexicon& lexicon) {
  if (mode == LabelMode::kTrace || (mode == LabelMode::kAuto && pair.trace)) {
    return InferLabelsFromTrace(pair, lexicon);
  }
  auto rows = InferLabelsSearch(pair.spoken, pair.written, lexicon);
  if (!rows) throw Error(ErrorCode::kNoDerivation, "no labeling derives \"" + pair.written + "\"");
  return std::move(*rows);
}

// Labeled examples from a pair file; unlabelable pairs are skipped.
std::vector<PieceExample> LoadExamples(const std::string& path, const PieceVocab& vocab,
                                       const RewriteLexicon& lexicon, std::size_t& skipped) {
  std::vector<PieceExample> out;
  if (path.empty()) return out;
  auto in = OpenIn(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    SpokenWrittenPair pair = PairFromJsonLine(line);
    try {
      auto rows = LabelPair(pair, LabelMode::kAuto, lexicon);
      out.push_back(MakePieceExample(vocab, pair.spoken, rows));
    } catch (const Error& e) {
      ++skipped;
      ITN_LOG(kWarning) << path << ":" << line_no << ": " << e.what();
    }
  }
  return out;
}

}  // namespace

LoadedResources::LoadedResources(const DataFiles& files) {
  if (files.grammar.empty()) {
    grammar_ = &Grammar::Default();
  } else {
    own_grammar_ = Grammar::Load(files.grammar);
    grammar_ = &*own_grammar_;
  }
  if (files.lexicon.empty()) {
    lexicon_ = &RewriteLexicon::Default();
  } else {
    own_lexicon_ = RewriteLexicon::Load(files.lexicon);
    lexicon_ = &*own_lexicon_;
  }
  if (files.patterns.empty()) {
    patterns_ = &PatternSet::Default();
  } else {
    own_patterns_ = PatternSet::Load(files.patterns);
    patterns_ = &*own_patterns_;
  }
}

std::vector<std::string> SpokenCorpus(const std::vector<std::string>& paths, const Resources& res,
                                      std::uint64_t seed) {
  std::vector<std::string> out;
  for (const auto& path : paths) {
    if (IsPairFile(path)) {
      auto in = OpenIn(path);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty()) out.push_back(JoinTokens(PairFromJsonLine(line).spoken));
      }
    } else {
      for (const auto& words : SpeakSentences(ReadLinesFile(path), res, seed)) {
        if (!words.empty()) out.push_back(JoinTokens(words));
      }
    }
  }
  return out;
}

AugmentStats AugmentFile(const std::string& in_path, const std::string& out_path,
                         const AugmentConfig& config, const Resources& res, std::size_t threads) {
  config.Validate();
  auto in = OpenIn(in_path);
  auto out = OpenOut(out_path);
  AugmentStats stats = AugmentCorpus(in, out, config, res.grammar, res.patterns, threads);
  CheckWritten(out, out_path);
  return stats;
}

void BuildVocabFile(const std::vector<std::string>& corpus_paths, std::size_t size,
                    const std::string& out_path, const Resources& res, std::uint64_t seed) {
  auto corpus = SpokenCorpus(corpus_paths, res, seed);
  PieceVocab vocab = PieceVocab::Build(corpus, ProtectedWords(res.grammar, res.lexicon), size);
  auto out = OpenOut(out_path);
  vocab.Save(out);
  CheckWritten(out, out_path);
  ITN_LOG(kInfo) << "vocabulary of " << vocab.size() << " pieces from " << corpus.size()
                 << " sentences";
}

std::size_t InferLabelsFile(const std::string& pairs_path, const std::string& out_path,
                            LabelMode mode, const RewriteLexicon& lexicon) {
  auto in = OpenIn(pairs_path);
  auto out = OpenOut(out_path);
  std::string line;
  std::size_t line_no = 0, skipped = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    SpokenWrittenPair pair = PairFromJsonLine(line);
    try {
      WriteLabeledSentence(out, {pair.spoken, LabelPair(pair, mode, lexicon)});
    } catch (const Error& e) {
      ++skipped;
      ITN_LOG(kWarning) << pairs_path << ":" << line_no << ": " << e.what();
    }
  }
  CheckWritten(out, out_path);
  return skipped;
}

void ApplyLabelsFile(const std::string& labels_path, std::ostream& out,
                     const RewriteLexicon& lexicon) {
  auto in = OpenIn(labels_path);
  for (const auto& sentence : ReadLabelFile(in)) {
    out << ApplyLabels(sentence.tokens, sentence.rows, lexicon) << '\n';
  }
}

TrainSummary TrainFile(const TrainOptions& options, const Resources& res) {
  PieceVocab vocab = PieceVocab::LoadFile(options.vocab);
  TrainSummary summary;
  auto pretrain = LoadExamples(options.pretrain, vocab, res.lexicon, summary.unlabeled);
  auto finetune = LoadExamples(options.finetune, vocab, res.lexicon, summary.unlabeled);
  summary.pretrain_pairs = pretrain.size();
  summary.finetune_pairs = finetune.size();

  TaggerConfig config = options.tagger;
  config.vocab_size = vocab.size();
  config.Validate();
  TaggerModel<float> model(config);
  model.InitRandom(config.seed);
  if (!options.general.empty()) {
    std::vector<std::vector<int>> ids;
    for (const auto& s : SpokenCorpus({options.general}, res, config.seed)) {
      ids.push_back(vocab.Encode(s));
    }
    EmbeddingPretrainConfig emb = options.embeddings;
    emb.seed = config.seed;
    SetPretrainedEmbedding(model, PretrainEmbeddings(ids, vocab.size(), config.embed_dim, emb));
    ITN_LOG(kInfo) << "embeddings pretrained on " << ids.size() << " sentences";
  }

  std::optional<std::ofstream> log;
  if (!options.log_path.empty()) log = OpenOut(options.log_path);
  summary.result = TrainTagger(model, pretrain, finetune, [&](const EpochLog& e) {
    ITN_LOG(kInfo) << e.phase << " epoch " << e.epoch << " train_loss " << e.train_loss
                   << " val_loss " << e.val_loss << " val_accuracy " << e.val_accuracy;
    if (log) {
      nlohmann::ordered_json j{{"phase", e.phase},          {"epoch", e.epoch},
                               {"train_loss", e.train_loss}, {"val_loss", e.val_loss},
                               {"val_accuracy", e.val_accuracy}};
      *log << j.dump() << '\n';
    }
  });
  QuantizeToHalf(model);
  SaveModelFile(options.out, model, vocab);
  summary.model_bytes = std::filesystem::file_size(options.out);
  return summary;
}

std::size_t TagFile(const std::string& model_path, const std::string& in_path,
                    const std::string& out_path, const RewriteLexicon& lexicon) {
  LoadedModel loaded = LoadModelFile(model_path);
  auto in = OpenIn(in_path);
  auto out = OpenOut(out_path);
  std::string line;
  std::size_t line_no = 0, repaired = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto words = SplitWhitespace(line);
    if (words.empty()) {
      out << '\n';
      continue;
    }
    TagResult r = TagSentence(loaded.model, loaded.vocab, words, lexicon);
    if (r.repaired) {
      ++repaired;
      ITN_LOG(kDebug) << in_path << ":" << line_no << ": labels repaired";
    }
    out << r.written << '\n';
  }
  CheckWritten(out, out_path);
  return repaired;
}

AccuracyReport EvaluateFiles(const std::string& ref_path, const std::string& hyp_path) {
  auto ref = OpenIn(ref_path);
  auto hyp = OpenIn(hyp_path);
  AccuracyReport report;
  std::string r, h;
  std::size_t lines = 0;
  while (true) {
    bool has_r = static_cast<bool>(std::getline(ref, r));
    bool has_h = static_cast<bool>(std::getline(hyp, h));
    if (has_r != has_h) {
      throw Error(ErrorCode::kAlignmentMismatch,
                  "reference and hypothesis differ in length after line " + std::to_string(lines));
    }
    if (!has_r) break;
    ++lines;
    report.Add(ScoreSentence(SplitWhitespace(r), SplitWhitespace(h)));
  }
  return report;
}

std::string OverlapTable(const std::vector<std::string>& a, const std::vector<std::string>& b,
                         const std::vector<std::size_t>& orders, std::size_t top_k,
                         const std::set<std::string>& stopwords, bool jaccard,
                         const Resources& res, std::uint64_t seed) {
  auto speak = [&](const std::vector<std::string>& lines) {
    std::vector<std::string> out;
    for (const auto& words : SpeakSentences(lines, res, seed)) out.push_back(JoinTokens(words));
    return out;
  };
  const auto sa = speak(a), sb = speak(b);
  nlohmann::ordered_json table;
  for (const auto& [form, x, y] : {std::tuple{"written", &a, &b}, std::tuple{"spoken", &sa, &sb}}) {
    nlohmann::ordered_json row;
    for (std::size_t n : orders) {
      std::string name = n == 1 ? "unigram" : n == 2 ? "bigram" : std::to_string(n) + "-gram";
      row[name] = NgramOverlap(*x, *y, n, top_k, stopwords, jaccard);
    }
    table[form] = row;
  }
  return table.dump(2);
}

}  // namespace itn::cli
