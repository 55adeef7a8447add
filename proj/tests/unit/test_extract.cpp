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

#include <string>

#include "itn/error.hpp"
#include "itn/extract.hpp"
#include "itn/verbalize.hpp"

namespace itn {
namespace {

const PatternSet& Patterns() { return PatternSet::Default(); }

WrittenEntity Only(const std::string& sentence) {
  auto entities = ExtractEntities(sentence, Patterns());
  EXPECT_EQ(entities.size(), 1u) << sentence;
  return entities.empty() ? WrittenEntity{} : entities[0];
}

TEST(Extract, FindsDecade) {
  auto e = Only("do you like 90s music");
  EXPECT_EQ(e.kind, EntityKind::kDecade);
  EXPECT_EQ(e.raw, "90s");
  EXPECT_EQ(e.span.begin, 12u);
  EXPECT_EQ(e.span.end, 15u);
}

TEST(Extract, FindsPercent) {
  auto e = Only("he is at 30% of his goal");
  EXPECT_EQ(e.kind, EntityKind::kPercent);
  EXPECT_EQ(e.raw, "30%");
}

TEST(Extract, NoDigitsNoEntities) {
  EXPECT_TRUE(ExtractEntities("hello world", Patterns()).empty());
}

TEST(Extract, PriorityOrderResolvesOverlaps) {
  EXPECT_EQ(Only("meet at 3:30").kind, EntityKind::kTime);
  EXPECT_EQ(Only("call 555-123-4567 now").kind, EntityKind::kPhoneNumber);
  EXPECT_EQ(Only("i have $120").kind, EntityKind::kCurrency);
  EXPECT_EQ(Only("add 3/4 cup").kind, EntityKind::kFraction);
  EXPECT_EQ(Only("it weighs 123g").kind, EntityKind::kMeasure);
  EXPECT_EQ(Only("the 21st century").kind, EntityKind::kOrdinal);
  EXPECT_EQ(Only("exactly 1,250 people").kind, EntityKind::kCardinal);
  EXPECT_EQ(Only("ask Dr. smith").kind, EntityKind::kAbbreviation);
}

TEST(Extract, EntitiesAreSortedByOffset) {
  auto entities = ExtractEntities("pay $5 for 3 items at 4:15", Patterns());
  ASSERT_EQ(entities.size(), 3u);
  EXPECT_EQ(entities[0].kind, EntityKind::kCurrency);
  EXPECT_EQ(entities[1].kind, EntityKind::kCardinal);
  EXPECT_EQ(entities[2].kind, EntityKind::kTime);
}

TEST(Canonicalize, TimeExpandsToHoursAndMinutes) {
  EXPECT_EQ(Canonicalize(Only("at 12:45")).canonical, "12 hours 45 minutes");
  EXPECT_EQ(Canonicalize(Only("at 12:00")).canonical, "12 hours 0 minutes");
}

TEST(Canonicalize, MagnitudeSuffixMultiplies) {
  auto e = Canonicalize(Only("lifted 10K lb today"));
  EXPECT_EQ(e.kind, EntityKind::kMeasure);
  EXPECT_EQ(e.canonical, "10000 lb");
}

TEST(Canonicalize, PlainCardinalUnchangedAndSeparatorsStripped) {
  EXPECT_EQ(Canonicalize(Only("7")).canonical, "7");
  EXPECT_EQ(Canonicalize(Only("1,250")).canonical, "1250");
}

TEST(Canonicalize, MalformedTimeIsRejected) {
  auto e = Only("at 25:99");
  try {
    Canonicalize(e);
    FAIL() << "25:99 accepted";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kMalformedEntity);
  }
}

TEST(ExtractProperty, SpansReconstructSentenceAndNeverOverlap) {
  Rng rng(31);
  const std::string alphabet = "0123456789 :/$%,.-gsthK";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    std::size_t len = 1 + rng.Below(30);
    for (std::size_t k = 0; k < len; ++k) s += alphabet[rng.Below(alphabet.size())];
    auto entities = ExtractEntities(s, Patterns());
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const auto& e : entities) {
      ASSERT_LE(cursor, e.span.begin) << s;
      ASSERT_LE(e.span.end, s.size());
      EXPECT_EQ(s.substr(e.span.begin, e.span.end - e.span.begin), e.raw);
      rebuilt += s.substr(cursor, e.span.begin - cursor) + e.raw;
      cursor = e.span.end;
    }
    rebuilt += s.substr(cursor);
    EXPECT_EQ(rebuilt, s);
  }
}

TEST(ExtractProperty, CanonicalizeIsIdempotent) {
  Rng rng(32);
  const std::string alphabet = "0123456789 :/$%,.gK";
  std::size_t checked = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    std::size_t len = 1 + rng.Below(14);
    for (std::size_t k = 0; k < len; ++k) s += alphabet[rng.Below(alphabet.size())];
    for (const auto& e : ExtractEntities(s, Patterns())) {
      WrittenEntity once;
      try {
        once = Canonicalize(e);
      } catch (const Error&) {
        continue;  // malformed shapes are rejected, not canonicalized
      }
      EXPECT_FALSE(once.canonical.empty());
      EXPECT_EQ(Canonicalize(once).canonical, once.canonical) << e.raw;
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(PatternSet, ParsesStanzasAndRejectsBadRegex) {
  auto p = PatternSet::Parse("kind Cardinal\npattern \\d+\npriority 1\n");
  ASSERT_EQ(p.patterns().size(), 1u);
  EXPECT_EQ(ExtractEntities("a 42 b", p).size(), 1u);
  try {
    PatternSet::Parse("kind Cardinal\npattern (\\d+\npriority 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPatternSyntax);
  }
}

}  // namespace
}  // namespace itn
