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

#include <algorithm>
#include <functional>
#include <string>

#include "itn/error.hpp"
#include "itn/grammar.hpp"
#include "itn/lexicon.hpp"
#include "itn/types.hpp"

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

TEST(Lexicon, LooksUpNumberWords) {
  const auto& lex = RewriteLexicon::Default();
  EXPECT_EQ(lex.Lookup("twenty", Rewrite::kCardinal), "20");
  EXPECT_EQ(lex.Lookup("seven", Rewrite::kVerbatim), "7");
}

TEST(Lexicon, CurrencyWordRewritesToSymbol) {
  EXPECT_EQ(RewriteLexicon::Default().Lookup("dollar", Rewrite::kCurrencySymbol), "$");
}

TEST(Lexicon, UnknownPairsAndNoneClassThrow) {
  const auto& lex = RewriteLexicon::Default();
  EXPECT_EQ(CodeOf([&] { lex.Lookup("hello", Rewrite::kCardinal); }), ErrorCode::kUnknownWord);
  EXPECT_EQ(CodeOf([&] { lex.Lookup("twenty", Rewrite::kNone); }), ErrorCode::kUnknownWord);
}

TEST(Lexicon, ClassesAreSortedAndComplete) {
  auto classes = RewriteLexicon::Default().ClassesOf("twenty");
  ASSERT_FALSE(classes.empty());
  EXPECT_TRUE(std::is_sorted(classes.begin(), classes.end()));
  EXPECT_NE(std::find(classes.begin(), classes.end(), Rewrite::kCardinal), classes.end());
}

TEST(Lexicon, ParsesCommentsAndRejectsDuplicates) {
  auto lex = RewriteLexicon::Parse("# numbers\none\tCardinal\t1\n\nten\tCardinal\t10\n");
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(CodeOf([] { RewriteLexicon::Parse("one\tCardinal\t1\none\tCardinal\t1\n"); }),
            ErrorCode::kLexiconSyntax);
  EXPECT_EQ(CodeOf([] { RewriteLexicon::Parse("one\tNotAClass\t1\n"); }),
            ErrorCode::kLexiconSyntax);
  EXPECT_EQ(CodeOf([] { RewriteLexicon::Parse("one\n"); }), ErrorCode::kLexiconSyntax);
}

TEST(Lexicon, CoversGrammarVocabularyForNumericSlots) {
  // Every word the default grammar can emit is either rewritable or a plain
  // connector that passes through ("and", "point", ...).
  const auto& lex = RewriteLexicon::Default();
  std::size_t rewritable = 0;
  for (const auto& w : Grammar::Default().SpokenVocabulary()) {
    rewritable += lex.ClassesOf(w).empty() ? 0 : 1;
  }
  EXPECT_GT(rewritable, 100u);
  for (const char* w : {"one", "twenty", "hundred", "thousand", "dollars", "grams", "ninety"}) {
    EXPECT_FALSE(lex.ClassesOf(w).empty()) << w;
  }
}

TEST(LabelRow, EveryValueRoundTripsThroughItsName) {
  for (std::size_t i = 0; i < kNumRewrite; ++i) {
    auto v = static_cast<Rewrite>(i);
    EXPECT_EQ(ParseRewrite(RewriteName(v)), v);
  }
  for (std::size_t i = 0; i < kNumPrepend; ++i) {
    auto v = static_cast<Prepend>(i);
    EXPECT_EQ(ParsePrepend(PrependName(v)), v);
  }
  for (std::size_t i = 0; i < kNumSpace; ++i) {
    auto v = static_cast<Space>(i);
    EXPECT_EQ(ParseSpace(SpaceName(v)), v);
  }
  for (std::size_t i = 0; i < kNumPost; ++i) {
    auto v = static_cast<Post>(i);
    EXPECT_EQ(ParsePost(PostName(v)), v);
  }
  EXPECT_EQ(CodeOf([] { ParseRewrite("Bogus"); }), ErrorCode::kUnknownLabel);
}

TEST(LabelRow, ClassIndicesRoundTrip) {
  for (int r = 0; r < static_cast<int>(kNumRewrite); ++r) {
    for (int p = 0; p < static_cast<int>(kNumPost); ++p) {
      std::array<int, 5> cls = {r, p % static_cast<int>(kNumPrepend), p % 2, p, (p + 1) % 5};
      EXPECT_EQ(LabelRow::FromClasses(cls).Classes(), cls);
    }
  }
  EXPECT_TRUE(LabelRow::Identity().IsIdentity());
  EXPECT_EQ(LabelRow{}.space, Space::kOn);
}

TEST(Grammar, ParsesStanzasAndGroups) {
  auto g = Grammar::Parse(
      "rule unit.1\nmatch 1\nemit one\n\n"
      "rule unit.2\nmatch 2\nemit two\nemit deux\n\n"
      "rule pair\nmatch (\\d)(\\d)\nemit {1:unit} {2:unit}\n");
  EXPECT_EQ(g.rules().size(), 3u);
  EXPECT_EQ(g.Group("unit").size(), 2u);
  ASSERT_NE(g.Find("unit.2"), nullptr);
  EXPECT_EQ(g.Find("unit.2")->alternatives.size(), 2u);
  EXPECT_EQ(g.SpokenVocabulary(), (std::set<std::string>{"one", "two", "deux"}));
}

TEST(Grammar, RejectsCyclesWithDiagnostic) {
  try {
    Grammar::Parse(
        "rule a\nmatch (\\d+)\nemit x {1:b}\n\n"
        "rule b\nmatch (\\d+)\nemit y {1:a}\n");
    FAIL() << "cycle accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGrammarCycle);
    std::string msg = e.what();
    EXPECT_NE(msg.find("a"), std::string::npos);
    EXPECT_NE(msg.find("b"), std::string::npos);
  }
}

TEST(Grammar, RejectsSyntaxErrors) {
  EXPECT_EQ(CodeOf([] { Grammar::Parse("rule a\nemit one\n"); }), ErrorCode::kGrammarSyntax);
  EXPECT_EQ(CodeOf([] { Grammar::Parse("match 1\n"); }), ErrorCode::kGrammarSyntax);
  EXPECT_EQ(CodeOf([] { Grammar::Parse("rule a\nmatch (\\d)\nemit {1:missing}\n"); }),
            ErrorCode::kGrammarSyntax);
  EXPECT_EQ(CodeOf([] { Grammar::Parse("rule a\nmatch 1\n"); }), ErrorCode::kGrammarSyntax);
}

TEST(Types, EntityKindNamesRoundTrip) {
  for (std::size_t i = 0; i < kNumEntityKinds; ++i) {
    auto k = static_cast<EntityKind>(i);
    EXPECT_EQ(ParseEntityKind(EntityKindName(k)), k);
  }
  EXPECT_FALSE(ParseEntityKind("Nope").has_value());
}

TEST(Types, JoinAndSplit) {
  EXPECT_EQ(SplitWhitespace("  a \t b\nc  "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(JoinTokens({"a", "b"}), "a b");
  EXPECT_EQ(JoinTokens({}), "");
}

}  // namespace
}  // namespace itn
