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

#ifndef ITN_TYPES_HPP_
#define ITN_TYPES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace itn {

enum class EntityKind : std::uint8_t {
  kCardinal,
  kOrdinal,
  kCurrency,
  kFraction,
  kMeasure,
  kAbbreviation,
  kPhoneNumber,
  kTime,
  kDecade,
  kPercent,
};
inline constexpr std::size_t kNumEntityKinds = 10;

std::string_view EntityKindName(EntityKind kind);
// Accepts the names produced by EntityKindName (case-insensitive).
std::optional<EntityKind> ParseEntityKind(std::string_view name);
// Lower-case name used as the grammar entry group ("phone" for PhoneNumber).
std::string_view EntityGrammarGroup(EntityKind kind);

// Half-open byte range [begin, end).
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool Overlaps(const ByteSpan& other) const {
    return begin < other.end && other.begin < end;
  }
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct WrittenEntity {
  EntityKind kind = EntityKind::kCardinal;
  ByteSpan span;        // offsets into the source sentence
  std::string raw;      // exact source text of the span
  std::string canonical;  // verbalizer input, e.g. "12 hours 45 minutes"
  // Display form the spoken variants are labelled against. Equal to `raw`
  // except where canonicalization changes digits (thousands separators,
  // magnitude suffixes such as "10K").
  std::string written;
};

// ---------------------------------------------------------------------------
// Label algebra.

enum class Rewrite : std::uint8_t {
  kNone,
  kCardinal,
  kCardinalDecade,
  kCardinalHundred,
  kCardinalThousand,
  kCardinalMillion,
  kCardinalBillion,
  kOrdinal,
  kVerbatim,
  kAbbreviate,
  kMeasure,
  kCurrencySymbol,
};
inline constexpr std::size_t kNumRewrite = 12;

enum class Prepend : std::uint8_t { kNone, kPeriod, kColon, kSlash, kHyphen, kDigits };
inline constexpr std::size_t kNumPrepend = 6;

enum class Space : std::uint8_t { kOn, kOff };
inline constexpr std::size_t kNumSpace = 2;

enum class Post : std::uint8_t { kNone, kMajorCurrency, kMinorCurrency, kMeasure, kMagnitude };
inline constexpr std::size_t kNumPost = 5;

// Head sizes in task order Rewrite, Prepend, Space, PostStart, PostEnd.
inline constexpr std::array<std::size_t, 5> kTaskSizes = {kNumRewrite, kNumPrepend, kNumSpace,
                                                          kNumPost, kNumPost};

std::string_view RewriteName(Rewrite v);
std::string_view PrependName(Prepend v);
std::string_view SpaceName(Space v);
std::string_view PostName(Post v);
// Throw Error(kUnknownLabel) on names outside the closed sets.
Rewrite ParseRewrite(std::string_view name);
Prepend ParsePrepend(std::string_view name);
Space ParseSpace(std::string_view name);
Post ParsePost(std::string_view name);

// Text inserted in front of a token for each Prepend label.
std::string_view PrependText(Prepend v);

bool IsCardinalFamily(Rewrite r);  // Cardinal .. Ordinal
bool IsNumberClass(Rewrite r);     // cardinal family or Verbatim
bool IsMagnitude(Rewrite r);       // Hundred .. Billion

struct LabelRow {
  Rewrite rewrite = Rewrite::kNone;
  Prepend prepend = Prepend::kNone;
  Space space = Space::kOn;
  Post post_start = Post::kNone;
  Post post_end = Post::kNone;

  static LabelRow Identity() { return {}; }
  bool IsIdentity() const { return *this == LabelRow{}; }

  // Class index per task, in kTaskSizes order.
  std::array<int, 5> Classes() const;
  static LabelRow FromClasses(const std::array<int, 5>& classes);

  friend bool operator==(const LabelRow&, const LabelRow&) = default;
};

// ---------------------------------------------------------------------------
// Spoken/written pairs.

// Provenance of one spoken token emitted inside an entity region.
struct TraceEntry {
  std::size_t token_index = 0;
  std::string rule;      // id of the rule stanza whose template emitted it
  std::size_t alternative = 0;
  std::size_t position = 0;  // element index inside that template
  EntityKind kind = EntityKind::kCardinal;
  ByteSpan entity_span;  // offsets into the pair's written text

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct SpokenWrittenPair {
  std::vector<std::string> spoken;
  std::string written;
  std::optional<std::vector<TraceEntry>> trace;
};

// Joins tokens with single spaces.
std::string JoinTokens(const std::vector<std::string>& tokens);
// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view text);

}  // namespace itn

#endif  // ITN_TYPES_HPP_
