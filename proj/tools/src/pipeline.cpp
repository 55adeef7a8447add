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

#include "itn_cli/pipeline.hpp"

#include <filesystem>
#include <fstream>

#include "itn/error.hpp"
#include "itn/log.hpp"
#include "itn/pair_io.hpp"

namespace itn::cli {

PipelineResult RunPipeline(const PipelineSettings& settings, const Resources& res) {
  namespace fs = std::filesystem;
  if (settings.source.empty() || settings.finetune.empty() || settings.test.empty()) {
    throw std::invalid_argument("pipeline needs source, finetune and test inputs");
  }
  fs::create_directories(settings.workdir);
  auto at = [&](const char* name) { return (fs::path(settings.workdir) / name).string(); };
  const std::uint64_t seed = settings.train.tagger.seed;
  PipelineResult result;

  AugmentConfig aug;
  aug.n_variants_per_sentence = settings.n_variants;
  aug.max_expansions_per_entity = settings.max_expansions;
  aug.seed = seed;
  result.augment = AugmentFile(settings.source, at("pairs.jsonl"), aug, res, settings.threads);
  ITN_LOG(kInfo) << "augment: " << result.augment.pairs << " pairs from "
                 << result.augment.lines << " lines";

  std::vector<std::string> vocab_inputs = {at("pairs.jsonl"), settings.finetune};
  if (!settings.general.empty()) vocab_inputs.push_back(settings.general);
  BuildVocabFile(vocab_inputs, settings.vocab_size, at("vocab.tsv"), res, seed);

  TrainOptions train = settings.train;
  train.pretrain = at("pairs.jsonl");
  train.finetune = settings.finetune;
  train.general = settings.general;
  train.vocab = at("vocab.tsv");
  train.out = at("model.itnf");
  train.log_path = at("train_log.jsonl");
  result.train = TrainFile(train, res);
  ITN_LOG(kInfo) << "train: model file " << result.train.model_bytes << " bytes";

  {
    auto pairs = ReadPairsFile(settings.test);
    std::ofstream spoken(at("test_spoken.txt"), std::ios::binary);
    std::ofstream ref(at("test_ref.txt"), std::ios::binary);
    for (const auto& p : pairs) {
      spoken << JoinTokens(p.spoken) << '\n';
      ref << p.written << '\n';
    }
    if (!spoken || !ref) throw Error(ErrorCode::kIo, "cannot write test files in " + settings.workdir);
  }
  result.repaired = TagFile(at("model.itnf"), at("test_spoken.txt"), at("hyp.txt"), res.lexicon);
  result.report = EvaluateFiles(at("test_ref.txt"), at("hyp.txt"));
  std::ofstream report(at("report.json"), std::ios::binary);
  report << result.report.ToJson() << '\n';
  if (!report) throw Error(ErrorCode::kIo, "cannot write " + at("report.json"));
  return result;
}

}  // namespace itn::cli
