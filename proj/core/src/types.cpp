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

#include "itn/types.hpp"

#include <algorithm>
#include <cctype>

#include "itn/error.hpp"

namespace itn {
namespace {

constexpr std::array<std::string_view, kNumEntityKinds> kKindNames = {
    "Cardinal", "Ordinal",     "Currency", "Fraction", "Measure",
    "Abbreviation", "PhoneNumber", "Time", "Decade",   "Percent"};
constexpr std::array<std::string_view, kNumEntityKinds> kKindGroups = {
    "cardinal", "ordinal", "currency", "fraction", "measure",
    "abbreviation", "phone", "time", "decade", "percent"};

constexpr std::array<std::string_view, kNumRewrite> kRewriteNames = {
    "None",    "Cardinal", "CardinalDecade", "CardinalHundred",
    "CardinalThousand", "CardinalMillion", "CardinalBillion", "Ordinal",
    "Verbatim", "Abbreviate", "Measure", "CurrencySymbol"};
constexpr std::array<std::string_view, kNumPrepend> kPrependNames = {
    "None", "Period", "Colon", "Slash", "Hyphen", "Digits"};
constexpr std::array<std::string_view, kNumPrepend> kPrependText = {
    "", ".", ":", "/", "-", "0"};
constexpr std::array<std::string_view, kNumSpace> kSpaceNames = {"On", "Off"};
constexpr std::array<std::string_view, kNumPost> kPostNames = {
    "None", "MajorCurrency", "MinorCurrency", "Measure", "Magnitude"};

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename Enum, std::size_t N>
Enum ParseName(const std::array<std::string_view, N>& names, std::string_view name,
               std::string_view task) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  throw Error(ErrorCode::kUnknownLabel,
              std::string(task) + " label '" + std::string(name) + "'");
}

}  // namespace

std::string_view EntityKindName(EntityKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<EntityKind> ParseEntityKind(std::string_view name) {
  for (std::size_t i = 0; i < kNumEntityKinds; ++i) {
    if (EqualsIgnoreCase(kKindNames[i], name) || EqualsIgnoreCase(kKindGroups[i], name)) {
      return static_cast<EntityKind>(i);
    }
  }
  return std::nullopt;
}

std::string_view EntityGrammarGroup(EntityKind kind) {
  return kKindGroups[static_cast<std::size_t>(kind)];
}

std::string_view RewriteName(Rewrite v) { return kRewriteNames[static_cast<std::size_t>(v)]; }
std::string_view PrependName(Prepend v) { return kPrependNames[static_cast<std::size_t>(v)]; }
std::string_view SpaceName(Space v) { return kSpaceNames[static_cast<std::size_t>(v)]; }
std::string_view PostName(Post v) { return kPostNames[static_cast<std::size_t>(v)]; }

Rewrite ParseRewrite(std::string_view name) {
  return ParseName<Rewrite>(kRewriteNames, name, "Rewrite");
}
Prepend ParsePrepend(std::string_view name) {
  return ParseName<Prepend>(kPrependNames, name, "Prepend");
}
Space ParseSpace(std::string_view name) { return ParseName<Space>(kSpaceNames, name, "Space"); }
Post ParsePost(std::string_view name) { return ParseName<Post>(kPostNames, name, "Post"); }

std::string_view PrependText(Prepend v) { return kPrependText[static_cast<std::size_t>(v)]; }

bool IsCardinalFamily(Rewrite r) { return r >= Rewrite::kCardinal && r <= Rewrite::kOrdinal; }
bool IsNumberClass(Rewrite r) { return IsCardinalFamily(r) || r == Rewrite::kVerbatim; }
bool IsMagnitude(Rewrite r) {
  return r >= Rewrite::kCardinalHundred && r <= Rewrite::kCardinalBillion;
}

std::array<int, 5> LabelRow::Classes() const {
  return {static_cast<int>(rewrite), static_cast<int>(prepend), static_cast<int>(space),
          static_cast<int>(post_start), static_cast<int>(post_end)};
}

LabelRow LabelRow::FromClasses(const std::array<int, 5>& c) {
  for (std::size_t t = 0; t < 5; ++t) {
    if (c[t] < 0 || static_cast<std::size_t>(c[t]) >= kTaskSizes[t]) {
      throw Error(ErrorCode::kUnknownLabel, "class index out of range for task " +
                                                std::to_string(t));
    }
  }
  return {static_cast<Rewrite>(c[0]), static_cast<Prepend>(c[1]), static_cast<Space>(c[2]),
          static_cast<Post>(c[3]), static_cast<Post>(c[4])};
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownWord: return "UnknownWord";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kGrammarCycle: return "GrammarCycle";
    case ErrorCode::kGrammarSyntax: return "GrammarSyntax";
    case ErrorCode::kLexiconSyntax: return "LexiconSyntax";
    case ErrorCode::kPatternSyntax: return "PatternSyntax";
    case ErrorCode::kMalformedEntity: return "MalformedEntity";
    case ErrorCode::kNoRuleMatch: return "NoRuleMatch";
    case ErrorCode::kVocabTooSmall: return "VocabTooSmall";
    case ErrorCode::kUnbalancedMarkers: return "UnbalancedMarkers";
    case ErrorCode::kMalformedRegion: return "MalformedRegion";
    case ErrorCode::kMalformedNumberRun: return "MalformedNumberRun";
    case ErrorCode::kTraceIncomplete: return "TraceIncomplete";
    case ErrorCode::kNoDerivation: return "NoDerivation";
    case ErrorCode::kIdOutOfRange: return "IdOutOfRange";
    case ErrorCode::kAlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kZeroWrittenEntities: return "ZeroWrittenEntities";
    case ErrorCode::kBadModelFile: return "BadModelFile";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace itn
