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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "itn/eval.hpp"
#include "itn/extract.hpp"
#include "itn/labels.hpp"
#include "itn/tagger.hpp"
#include "itn/tokenize.hpp"
#include "itn/verbalize.hpp"

namespace {

using namespace itn;

void BM_ExpandCardinal(benchmark::State& state) {
  auto e = Canonicalize(ExtractEntities("1234", PatternSet::Default()).at(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExpandEntity(e, Grammar::Default(), 64));
  }
}
BENCHMARK(BM_ExpandCardinal);

void BM_AugmentSentence(benchmark::State& state) {
  AugmentConfig config;
  std::uint64_t line = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(AugmentSentence("pay $1234 for 3/4 of the 90s records at 12:45", config,
                                             Grammar::Default(), PatternSet::Default(), line++));
  }
}
BENCHMARK(BM_AugmentSentence);

void BM_InferLabelsSearch(benchmark::State& state) {
  std::vector<std::string> spoken = {"i", "paid", "one", "thousand", "two", "hundred", "dollars",
                                     "for", "the", "nineties", "records"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        InferLabelsSearch(spoken, "i paid $1200 for the 90s records", RewriteLexicon::Default()));
  }
}
BENCHMARK(BM_InferLabelsSearch);

const PieceVocab& Vocab() {
  static const PieceVocab vocab = [] {
    std::vector<std::string> corpus;
    for (int i = 0; i < 200; ++i) {
      corpus.push_back("book a table for " + std::to_string(i % 9) +
                       " at sakura tonight and pay with the card");
    }
    return PieceVocab::Build(corpus, ProtectedWords(Grammar::Default(), RewriteLexicon::Default()),
                             1024);
  }();
  return vocab;
}

void BM_TokenizerEncode(benchmark::State& state) {
  const std::string text = "please book a table for four at sakura for one twenty dollars tonight";
  for (auto _ : state) benchmark::DoNotOptimize(Vocab().Encode(text));
}
BENCHMARK(BM_TokenizerEncode);

void BM_TaggerForward(benchmark::State& state) {
  TaggerConfig config;
  config.vocab_size = Vocab().size();
  TaggerModel<float> model(config);
  model.InitRandom(1);
  std::vector<int> ids(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(3 + i % 250);
  for (auto _ : state) benchmark::DoNotOptimize(model.Forward(ids));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TaggerForward)->Arg(8)->Arg(32);

void BM_AlignTokens(benchmark::State& state) {
  std::vector<std::string> ref, hyp;
  for (int i = 0; i < state.range(0); ++i) {
    ref.push_back("w" + std::to_string(i % 7));
    hyp.push_back("w" + std::to_string((i * 3) % 7));
  }
  for (auto _ : state) benchmark::DoNotOptimize(AlignTokens(ref, hyp));
}
BENCHMARK(BM_AlignTokens)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
