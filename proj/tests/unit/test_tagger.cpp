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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "itn/error.hpp"
#include "itn/tagger.hpp"
#include "itn/verbalize.hpp"

namespace itn {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kIo;
}

TaggerConfig Tiny(std::size_t vocab = 300) {
  TaggerConfig c;
  c.vocab_size = vocab;
  c.embed_dim = 6;
  c.hidden_dim = 8;
  c.layers = 2;
  c.head_hidden = 5;
  return c;
}

PieceExample Example(std::vector<int> ids, std::vector<LabelRow> rows) {
  return {std::move(ids), std::move(rows)};
}

LabelRow Some(int k) {
  return LabelRow::FromClasses({k % 12, k % 6, k % 2, k % 5, (k + 2) % 5});
}

TEST(TaggerConfig, ValidatesAndCountsParameters) {
  TaggerConfig c = Tiny();
  EXPECT_NO_THROW(c.Validate());
  TaggerModel<float> m(c);
  std::size_t total = 0;
  for (const auto& p : m.params()) total += static_cast<std::size_t>(p.value.size());
  EXPECT_EQ(c.ParameterCount(), total);

  TaggerConfig bad = c;
  bad.vocab_size = 0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = c;
  bad.hidden_dim = 7;  // split across two directions
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = c;
  bad.validation_fraction = 1.0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
}

TEST(TaggerForward, ZeroModelIsUniform) {
  TaggerModel<double> m(Tiny());
  auto out = m.Forward({5, 6, 7});
  for (std::size_t h = 0; h < 5; ++h) {
    ASSERT_EQ(out[h].rows(), static_cast<Eigen::Index>(kTaskSizes[h]));
    ASSERT_EQ(out[h].cols(), 3);
    for (Eigen::Index i = 0; i < out[h].size(); ++i) {
      EXPECT_NEAR(out[h].data()[i], 1.0 / static_cast<double>(kTaskSizes[h]), 1e-12);
    }
  }
}

TEST(TaggerForward, SingleTokenShapeAndNormalization) {
  TaggerModel<float> m(Tiny());
  m.InitRandom(3);
  for (const std::vector<int>& ids : {std::vector<int>{42}, std::vector<int>{1, 2, 3, 299, 0}}) {
    auto out = m.Forward(ids);
    for (std::size_t h = 0; h < 5; ++h) {
      ASSERT_EQ(out[h].cols(), static_cast<Eigen::Index>(ids.size()));
      for (Eigen::Index t = 0; t < out[h].cols(); ++t) {
        EXPECT_NEAR(out[h].col(t).template cast<double>().sum(), 1.0, 1e-6);
        EXPECT_GE(out[h].col(t).minCoeff(), 0.0f);
      }
    }
  }
}

TEST(TaggerForward, DeterministicAndBoundsChecked) {
  TaggerModel<float> m(Tiny());
  m.InitRandom(9);
  auto a = m.Forward({3, 4});
  auto b = m.Forward({3, 4});
  for (std::size_t h = 0; h < 5; ++h) EXPECT_EQ(a[h], b[h]);
  EXPECT_EQ(CodeOf([&] { m.Forward({300}); }), ErrorCode::kIdOutOfRange);
  EXPECT_EQ(CodeOf([&] { m.Forward({-1}); }), ErrorCode::kIdOutOfRange);
}

TEST(TaggerLoss, UniformPredictionsCostSumOfLogK) {
  TaggerModel<double> m(Tiny());
  PieceExample a = Example({1, 2, 3}, {Some(0), Some(1), Some(2)});
  PieceExample b = Example({7}, {Some(3)});
  double expected = 0;
  for (auto k : kTaskSizes) expected += std::log(static_cast<double>(k));
  EXPECT_NEAR(m.Loss({&a, &b}, false), expected, 1e-12);
}

TEST(TaggerLoss, ConfidentCorrectPredictionsCostNothing) {
  TaggerModel<double> m(Tiny());
  LabelRow gold = Some(4);
  auto classes = gold.Classes();
  std::size_t task = 0;
  for (auto& p : m.params()) {
    if (p.name.size() > 3 && p.name.compare(p.name.size() - 3, 3, ".b2") == 0) {
      p.value(classes[task++], 0) = 60.0;
    }
  }
  ASSERT_EQ(task, 5u);
  PieceExample e = Example({1, 2}, {gold, gold});
  double loss = m.Loss({&e}, false);
  EXPECT_GE(loss, 0.0);
  EXPECT_LT(loss, 1e-20);
}

TEST(TaggerLoss, RowCountMustMatchPieces) {
  TaggerModel<double> m(Tiny());
  PieceExample e = Example({1, 2}, {Some(0)});
  EXPECT_EQ(CodeOf([&] { m.Loss({&e}, false); }), ErrorCode::kAlignmentMismatch);
}

TEST(TaggerLoss, GradientMatchesCentralDifferences) {
  TaggerConfig c = Tiny(260);
  c.task_weights = {1.0, 0.5, 2.0, 1.0, 0.25};
  TaggerModel<double> m(c);
  m.InitRandom(11);
  PieceExample a = Example({1, 5, 19, 2}, {Some(0), Some(1), Some(7), Some(3)});
  PieceExample b = Example({4, 4}, {Some(5), Some(6)});
  m.ZeroGrad();
  m.Loss({&a, &b}, true);
  Rng rng(2);
  const double h = 1e-5;
  for (auto& p : m.params()) {
    for (int probe = 0; probe < 4; ++probe) {
      Eigen::Index i = static_cast<Eigen::Index>(rng.Below(static_cast<std::uint64_t>(p.value.size())));
      double keep = p.value.data()[i];
      p.value.data()[i] = keep + h;
      double up = m.Loss({&a, &b}, false);
      p.value.data()[i] = keep - h;
      double down = m.Loss({&a, &b}, false);
      p.value.data()[i] = keep;
      double numeric = (up - down) / (2 * h);
      double analytic = p.grad.data()[i];
      double scale = std::max({std::abs(numeric), std::abs(analytic), 1e-3});
      EXPECT_LT(std::abs(numeric - analytic) / scale, 1e-4) << p.name << "[" << i << "]";
    }
  }
}

std::vector<std::string> WordsOf(const std::string& s) { return SplitWhitespace(s); }

TEST(PieceExamples, ContinuationPiecesAreNeutral) {
  auto vocab = PieceVocab::Build({"xylophone"}, {"one"}, 262);
  LabelRow row = Some(1);
  row.space = Space::kOn;
  auto ex = MakePieceExample(vocab, {"one", "xylophone"}, {row, row});
  ASSERT_GT(ex.ids.size(), 2u);
  ASSERT_EQ(ex.ids.size(), ex.rows.size());
  EXPECT_EQ(ex.rows[0], row);
  EXPECT_EQ(ex.rows[1], row);
  for (std::size_t i = 2; i < ex.rows.size(); ++i) {
    EXPECT_EQ(ex.rows[i].rewrite, Rewrite::kNone);
    EXPECT_EQ(ex.rows[i].space, Space::kOff);
    EXPECT_EQ(ex.rows[i].post_start, Post::kNone);
    EXPECT_EQ(ex.rows[i].post_end, Post::kNone);
  }
}

struct Toy {
  PieceVocab vocab;
  std::vector<PieceExample> data;
};

Toy MakeToy() {
  std::vector<std::string> corpus = {"hello world", "i have one twenty dollar", "good morning"};
  Toy t{PieceVocab::Build(corpus, ProtectedWords(Grammar::Default(), RewriteLexicon::Default()), 700), {}};
  std::vector<LabelRow> dollar_rows = {
      LabelRow{}, LabelRow{},
      {Rewrite::kCardinal, Prepend::kNone, Space::kOn, Post::kMajorCurrency, Post::kNone},
      {Rewrite::kCardinal, Prepend::kNone, Space::kOff, Post::kNone, Post::kNone},
      {Rewrite::kCurrencySymbol, Prepend::kNone, Space::kOff, Post::kNone, Post::kMajorCurrency}};
  t.data.push_back(MakePieceExample(t.vocab, WordsOf(corpus[1]), dollar_rows));
  t.data.push_back(MakePieceExample(t.vocab, WordsOf(corpus[0]), {LabelRow{}, LabelRow{}}));
  t.data.push_back(MakePieceExample(t.vocab, WordsOf(corpus[2]), {LabelRow{}, LabelRow{}}));
  return t;
}

TaggerConfig ToyConfig(std::size_t vocab) {
  TaggerConfig c;
  c.vocab_size = vocab;
  c.embed_dim = 16;
  c.hidden_dim = 32;
  c.head_hidden = 16;
  c.learning_rate = 1e-2;
  c.batch_size = 3;
  return c;
}

TEST(TaggerTraining, MemorizesAndTagsDollarExample) {
  Toy toy = MakeToy();
  TaggerModel<float> m(ToyConfig(toy.vocab.size()));
  m.InitRandom(5);
  FitEpochs(m, toy.data, 150, 5);
  EXPECT_EQ(PieceAccuracy(m, toy.data), 1.0);
  auto tagged = TagSentence(m, toy.vocab, WordsOf("i have one twenty dollar"), RewriteLexicon::Default());
  EXPECT_EQ(tagged.written, "i have $120");
  EXPECT_FALSE(tagged.repaired);
  EXPECT_EQ(TagSentence(m, toy.vocab, WordsOf("hello world"), RewriteLexicon::Default()).written,
            "hello world");
}

TEST(TaggerTraining, DeterministicUnderSeed) {
  Toy toy = MakeToy();
  std::vector<PieceExample> more;
  for (int i = 0; i < 4; ++i) more.insert(more.end(), toy.data.begin(), toy.data.end());
  TaggerConfig c = ToyConfig(toy.vocab.size());
  c.epochs = 3;
  c.finetune_epochs = 2;
  auto run = [&] {
    TaggerModel<float> m(c);
    m.InitRandom(c.seed);
    return TrainTagger(m, more, toy.data);
  };
  auto a = run();
  auto b = run();
  EXPECT_EQ(a.final_val_loss, b.final_val_loss);
  ASSERT_EQ(a.log.size(), b.log.size());
  EXPECT_EQ(a.log.front().phase, "pretrain");
  EXPECT_EQ(a.log.back().phase, "finetune");
}

TEST(TaggerTraining, EmptyFinetuneIsPretrainOnlyAndEmptyBothFails) {
  Toy toy = MakeToy();
  std::vector<PieceExample> more;
  for (int i = 0; i < 4; ++i) more.insert(more.end(), toy.data.begin(), toy.data.end());
  TaggerConfig c = ToyConfig(toy.vocab.size());
  c.epochs = 2;
  TaggerModel<float> m(c);
  m.InitRandom(1);
  auto r = TrainTagger(m, more, {});
  ASSERT_FALSE(r.log.empty());
  for (const auto& e : r.log) EXPECT_EQ(e.phase, "pretrain");
  EXPECT_EQ(CodeOf([&] { TrainTagger(m, {}, {}); }), ErrorCode::kEmptyDataset);
}

TEST(TaggerTraining, RepairsUnbalancedPredictions) {
  Toy toy = MakeToy();
  TaggerModel<float> m(ToyConfig(toy.vocab.size()));
  // Bias the PostStart head towards MajorCurrency on every piece: markers can
  // never balance, so the tagger must fall back and flag the sentence.
  for (auto& p : m.params()) {
    if (p.name == "head.post_start.b2") p.value(static_cast<int>(Post::kMajorCurrency), 0) = 10.f;
  }
  auto r = TagSentence(m, toy.vocab, WordsOf("hello world"), RewriteLexicon::Default());
  EXPECT_TRUE(r.repaired);
  EXPECT_EQ(r.written, "hello world");
}

TEST(Quantize, IsIdempotentAndHalfPrecise) {
  TaggerModel<float> m(Tiny());
  m.InitRandom(4);
  auto before = m.params()[0].value;
  QuantizeToHalf(m);
  auto once = m.params()[0].value;
  QuantizeToHalf(m);
  EXPECT_EQ(m.params()[0].value, once);
  EXPECT_LT((before - once).cwiseAbs().maxCoeff(), 1e-3f);
}

TEST(ModelFile, SaveLoadIsBitExactAfterQuantization) {
  Toy toy = MakeToy();
  TaggerModel<float> m(ToyConfig(toy.vocab.size()));
  m.InitRandom(6);
  QuantizeToHalf(m);
  std::stringstream buf;
  SaveModel(buf, m, toy.vocab);
  auto loaded = LoadModel(buf);
  ASSERT_EQ(loaded.model.params().size(), m.params().size());
  for (std::size_t i = 0; i < m.params().size(); ++i) {
    EXPECT_EQ(loaded.model.params()[i].name, m.params()[i].name);
    EXPECT_EQ(loaded.model.params()[i].value, m.params()[i].value);
  }
  ASSERT_EQ(loaded.vocab.size(), toy.vocab.size());
  for (const auto& ex : toy.data) {
    auto a = m.Forward(ex.ids);
    auto b = loaded.model.Forward(ex.ids);
    for (std::size_t h = 0; h < 5; ++h) EXPECT_EQ(a[h], b[h]);
  }
}

TEST(ModelFile, RejectsCorruptInput) {
  std::istringstream junk("NOPE and some bytes");
  EXPECT_EQ(CodeOf([&] { LoadModel(junk); }), ErrorCode::kBadModelFile);

  Toy toy = MakeToy();
  TaggerModel<float> m(ToyConfig(toy.vocab.size()));
  std::stringstream buf;
  SaveModel(buf, m, toy.vocab);
  std::string bytes = buf.str();
  std::istringstream cut(bytes.substr(0, bytes.size() / 2));
  EXPECT_EQ(CodeOf([&] { LoadModel(cut); }), ErrorCode::kBadModelFile);
}

std::vector<std::vector<int>> ContextCorpus(const PieceVocab& v) {
  // "twenty" and "thirty" share every context; "hello" lives elsewhere.
  std::vector<std::vector<int>> out;
  Rng rng(12);
  std::vector<std::string> nums = {"twenty", "thirty"};
  std::vector<std::string> units = {"dollars", "kilos", "minutes"};
  std::vector<std::string> greet = {"there", "friend", "again"};
  for (int i = 0; i < 400; ++i) {
    out.push_back(v.Encode("about " + nums[rng.Below(2)] + " " + units[rng.Below(3)]));
    out.push_back(v.Encode("hello " + greet[rng.Below(3)] + " and goodbye"));
  }
  return out;
}

double Cosine(const Eigen::MatrixXf& e, int a, int b) {
  return e.col(a).dot(e.col(b)) / (e.col(a).norm() * e.col(b).norm());
}

TEST(EmbeddingPretrain, SharedContextsMeanSimilarVectors) {
  std::set<std::string> words = {"about", "twenty", "thirty", "dollars", "kilos", "minutes",
                                 "hello", "there", "friend", "again", "and", "goodbye"};
  auto vocab = PieceVocab::Build({}, words, 300);
  auto corpus = ContextCorpus(vocab);
  EmbeddingPretrainConfig cfg;
  cfg.epochs = 10;
  auto e = PretrainEmbeddings(corpus, vocab.size(), 16, cfg);
  int twenty = vocab.Encode("twenty")[0], thirty = vocab.Encode("thirty")[0];
  int hello = vocab.Encode("hello")[0];
  EXPECT_GT(Cosine(e, twenty, thirty), Cosine(e, twenty, hello));

  auto again = PretrainEmbeddings(corpus, vocab.size(), 16, cfg);
  EXPECT_EQ(e, again);
}

TEST(EmbeddingPretrain, TinyAndEmptyCorpora) {
  auto e = PretrainEmbeddings({{5, 6, 7}}, 10, 4, {});
  EXPECT_TRUE(e.allFinite());
  EXPECT_EQ(e.rows(), 4);
  EXPECT_EQ(e.cols(), 10);
  EXPECT_EQ(CodeOf([] { PretrainEmbeddings({}, 10, 4, {}); }), ErrorCode::kEmptyCorpus);
}

TEST(EmbeddingPretrain, InstallsIntoModelWithMatchingScale) {
  TaggerModel<float> m(Tiny(260));
  m.InitRandom(1);
  float rms = std::sqrt(m.Get("embedding").value.squaredNorm() /
                        static_cast<float>(m.Get("embedding").value.size()));
  Eigen::MatrixXf pre = Eigen::MatrixXf::Constant(6, 260, 3.0f);
  SetPretrainedEmbedding(m, pre);
  const auto& emb = m.Get("embedding").value;
  float after = std::sqrt(emb.squaredNorm() / static_cast<float>(emb.size()));
  // Target is the expected RMS of uniform(-0.1, 0.1); the sampled init is close to it.
  EXPECT_NEAR(after, 0.1f / std::sqrt(3.0f), 1e-6f);
  EXPECT_NEAR(rms, after, 0.02f * after);
  EXPECT_EQ(CodeOf([&] { SetPretrainedEmbedding(m, Eigen::MatrixXf::Zero(6, 5)); }),
            ErrorCode::kAlignmentMismatch);
}

}  // namespace
}  // namespace itn
