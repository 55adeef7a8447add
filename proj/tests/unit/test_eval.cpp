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

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "itn/error.hpp"
#include "itn/eval.hpp"
#include "itn/verbalize.hpp"
#include "itn_cli/synth.hpp"
#include "oracles.hpp"

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

std::vector<std::string> W(const std::string& s) { return oracle::Words(s); }

TEST(Align, IdenticalSequencesAreAllMatches) {
  auto a = AlignTokens(W("i have $120"), W("i have $120"));
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].op, EditOp::kMatch);
    EXPECT_EQ(a[i].ref, i);
    EXPECT_EQ(a[i].hyp, i);
  }
  EXPECT_EQ(AlignmentCost(a), 0u);
}

TEST(Align, EntityMismatchIsOneSubstitution) {
  auto a = AlignTokens(W("i have $120"), W("i have 120"));
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[2].op, EditOp::kSubstitute);
  EXPECT_EQ(AlignmentCost(a), 1u);
}

TEST(Align, EmptySides) {
  auto ins = AlignTokens({}, W("a b"));
  ASSERT_EQ(ins.size(), 2u);
  for (const auto& p : ins) {
    EXPECT_EQ(p.op, EditOp::kInsert);
    EXPECT_FALSE(p.ref.has_value());
  }
  auto del = AlignTokens(W("a b"), {});
  ASSERT_EQ(del.size(), 2u);
  for (const auto& p : del) {
    EXPECT_EQ(p.op, EditOp::kDelete);
    EXPECT_FALSE(p.hyp.has_value());
  }
  EXPECT_TRUE(AlignTokens({}, {}).empty());
}

TEST(AlignProperty, MatchesBruteForceOracle) {
  Rng rng(77);
  const std::vector<std::string> alphabet = {"a", "b", "c", "$5"};
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::string> ref, hyp;
    for (std::uint64_t i = 0, n = rng.Below(6); i < n; ++i) ref.push_back(alphabet[rng.Below(4)]);
    for (std::uint64_t i = 0, n = rng.Below(6); i < n; ++i) hyp.push_back(alphabet[rng.Below(4)]);
    auto got = AlignTokens(ref, hyp);
    auto want = oracle::BruteForceAlign(ref, hyp);
    ASSERT_EQ(AlignmentCost(got), want.cost);
    ASSERT_EQ(want.cost, oracle::EditDistance(ref, hyp));
    ASSERT_EQ(got.size(), want.ops.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(static_cast<int>(got[i].op), want.ops[i]);
    }
  }
}

TEST(Classify, Kinds) {
  EXPECT_EQ(ClassifyEntity("$120"), EntityKind::kCurrency);
  EXPECT_EQ(ClassifyEntity("\xE2\x82\xAC" "5"), EntityKind::kCurrency);
  EXPECT_EQ(ClassifyEntity("3/4"), EntityKind::kFraction);
  EXPECT_EQ(ClassifyEntity("42"), EntityKind::kCardinal);
  EXPECT_FALSE(ClassifyEntity("hello").has_value());
  EXPECT_FALSE(ClassifyEntity("$").has_value());
}

TEST(Score, PerfectHypothesis) {
  auto r = ScoreCorpus({"pay $5 for 3 of 1/2"}, {"pay $5 for 3 of 1/2"});
  EXPECT_EQ(r.overall.accuracy(), 1.0);
  EXPECT_EQ(r.cardinal.accuracy(), 1.0);
  EXPECT_EQ(r.currency.accuracy(), 1.0);
  EXPECT_EQ(r.fraction.accuracy(), 1.0);
}

TEST(Score, OneWrongCardinalOfThree) {
  auto r = ScoreCorpus({"1 2 3"}, {"1 2 4"});
  EXPECT_EQ(r.cardinal.correct, 2u);
  EXPECT_EQ(r.cardinal.error, 1u);
  EXPECT_DOUBLE_EQ(*r.cardinal.accuracy(), 2.0 / 3.0);
  EXPECT_FALSE(r.currency.accuracy().has_value());
}

TEST(Score, ReportJsonShape) {
  auto r = ScoreCorpus({"i have $120", "no entities"}, {"i have 120", "no entities"});
  EXPECT_EQ(r.ToJson(),
            "{\"overall\": {\"correct\": 0, \"error\": 1, \"accuracy\": 0.000000}, "
            "\"cardinal\": {\"correct\": 0, \"error\": 0, \"accuracy\": \"n/a\"}, "
            "\"currency\": {\"correct\": 0, \"error\": 1, \"accuracy\": 0.000000}, "
            "\"fraction\": {\"correct\": 0, \"error\": 0, \"accuracy\": \"n/a\"}}");
  EXPECT_EQ(CodeOf([] { ScoreCorpus({"a"}, {}); }), ErrorCode::kAlignmentMismatch);
}

TEST(ScoreProperty, MatchesBruteForceRecount) {
  Rng rng(5);
  auto refs = cli::SynthCorpus(cli::Domain::kTarget, 100, 8);
  std::vector<std::string> hyps;
  const std::vector<std::string> noise = {"120", "$12", "3/5", "um", "7"};
  for (const auto& line : refs) {
    auto words = W(line);
    switch (rng.Below(4)) {
      case 0:
        if (!words.empty()) words[rng.Below(words.size())] = noise[rng.Below(noise.size())];
        break;
      case 1:
        if (!words.empty()) words.erase(words.begin() + static_cast<long>(rng.Below(words.size())));
        break;
      case 2:
        words.insert(words.begin() + static_cast<long>(rng.Below(words.size() + 1)), noise[rng.Below(5)]);
        break;
      default:
        break;
    }
    hyps.push_back(JoinTokens(words));
  }
  auto r = ScoreCorpus(refs, hyps);
  auto t = oracle::RecountAccuracy(refs, hyps);
  EXPECT_EQ(r.overall.correct, t.correct[0]);
  EXPECT_EQ(r.overall.error, t.error[0]);
  EXPECT_EQ(r.cardinal.correct, t.correct[oracle::kCardinal]);
  EXPECT_EQ(r.cardinal.error, t.error[oracle::kCardinal]);
  EXPECT_EQ(r.currency.correct, t.correct[oracle::kCurrency]);
  EXPECT_EQ(r.currency.error, t.error[oracle::kCurrency]);
  EXPECT_EQ(r.fraction.correct, t.correct[oracle::kFraction]);
  EXPECT_EQ(r.fraction.error, t.error[oracle::kFraction]);
  EXPECT_GT(r.overall.error, 0u);
}

TEST(Diversity, RatiosReduceAndFormat) {
  auto r = Diversity(3, 20);
  EXPECT_EQ(r.numerator, 20u);
  EXPECT_EQ(r.denominator, 3u);
  EXPECT_EQ(r.ToString(), "20/3 = 6.67");
  EXPECT_DOUBLE_EQ(Diversity(5, 5).value(), 1.0);
  EXPECT_EQ(Diversity(4, 10).ToString(), "5/2 = 2.50");
  EXPECT_EQ(CodeOf([] { Diversity(0, 4); }), ErrorCode::kZeroWrittenEntities);
}

TEST(Overlap, IdenticalAndDisjoint) {
  std::vector<std::string> a = {"red fish blue fish", "one fish two fish"};
  std::vector<std::string> b = {"cats nap", "dogs bark loudly"};
  EXPECT_DOUBLE_EQ(NgramOverlap(a, a, 1, 3, {}), 100.0);
  EXPECT_DOUBLE_EQ(NgramOverlap(a, b, 1, 3, {}), 0.0);
  EXPECT_EQ(CodeOf([&] { NgramOverlap({}, a, 1, 3, {}); }), ErrorCode::kEmptyCorpus);
}

TEST(Overlap, JaccardUsesUnion) {
  std::vector<std::string> a = {"x y"}, b = {"y z"};
  EXPECT_DOUBLE_EQ(NgramOverlap(a, b, 1, 2, {}), 50.0);
  EXPECT_NEAR(NgramOverlap(a, b, 1, 2, {}, true), 100.0 / 3.0, 1e-9);
}

TEST(OverlapProperty, MatchesBruteForceRecount) {
  auto src = cli::SynthCorpus(cli::Domain::kSource, 300, 4);
  auto tgt = cli::SynthCorpus(cli::Domain::kTarget, 300, 4);
  const auto& stop = DefaultStopwords();
  for (std::size_t n : {1u, 2u}) {
    for (std::size_t k : {5u, 20u, 50u}) {
      EXPECT_EQ(TopNgrams(src, n, k, stop), oracle::TopK(src, n, k, stop));
      EXPECT_DOUBLE_EQ(NgramOverlap(src, tgt, n, k, stop), oracle::OverlapPercent(src, tgt, n, k, stop))
          << n << "-grams top " << k;
    }
  }
}

TEST(Stopwords, ParseSkipsCommentsAndBlanks) {
  auto s = ParseStopwords("# header\nthe\n\n  a  \nof\n");
  EXPECT_EQ(s, (std::set<std::string>{"the", "a", "of"}));
  EXPECT_TRUE(DefaultStopwords().count("the"));
}

}  // namespace
}  // namespace itn
