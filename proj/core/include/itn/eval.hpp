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

#ifndef ITN_EVAL_HPP_
#define ITN_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "itn/types.hpp"

namespace itn {

enum class EditOp : std::uint8_t { kMatch, kSubstitute, kDelete, kInsert };

struct AlignedPair {
  EditOp op = EditOp::kMatch;
  std::optional<std::size_t> ref;  // absent for insertions
  std::optional<std::size_t> hyp;  // absent for deletions
};

// Minimal edit-distance alignment. Among optimal alignments the one chosen
// prefers match, then substitution, deletion, insertion, deciding from the
// left.
std::vector<AlignedPair> AlignTokens(const std::vector<std::string>& ref,
                                     const std::vector<std::string>& hyp);
std::size_t AlignmentCost(const std::vector<AlignedPair>& alignment);

// The three kinds scored: Currency ("$120"), Fraction ("3/4"), Cardinal ("42").
std::optional<EntityKind> ClassifyEntity(std::string_view token);

struct KindScore {
  std::size_t correct = 0;
  std::size_t error = 0;
  // nullopt when the kind never occurs ("n/a").
  std::optional<double> accuracy() const;
};

struct AccuracyReport {
  KindScore overall;
  KindScore cardinal;
  KindScore currency;
  KindScore fraction;

  void Add(const AccuracyReport& other);
  // {"overall": {...}, "cardinal": {...}, "currency": {...}, "fraction": {...}}
  std::string ToJson() const;
};

// Scores one aligned sentence: each reference entity is correct when it is
// matched to an identical hypothesis token.
AccuracyReport ScoreSentence(const std::vector<std::string>& ref,
                             const std::vector<std::string>& hyp);

// Line-parallel corpora. Throws Error(kAlignmentMismatch) on differing line
// counts.
AccuracyReport ScoreCorpus(const std::vector<std::string>& ref_lines,
                           const std::vector<std::string>& hyp_lines);

struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  double value() const;
  std::string ToString() const;  // "20/3 = 6.67"
};

// Spoken-form entities per written-form entity.
// Throws Error(kZeroWrittenEntities).
Ratio Diversity(std::uint64_t written_entities, std::uint64_t spoken_forms);

// The `top_k` most frequent n-grams of a corpus, skipping any n-gram that
// contains a stopword. Frequency ties resolve in byte order.
std::vector<std::string> TopNgrams(const std::vector<std::string>& corpus, std::size_t n,
                                   std::size_t top_k, const std::set<std::string>& stopwords);

// Percentage of shared top-k n-grams. The denominator is top_k, or the
// smaller set when a corpus has fewer than top_k n-grams; `jaccard` divides
// by the union instead. Throws Error(kEmptyCorpus).
double NgramOverlap(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    std::size_t n, std::size_t top_k, const std::set<std::string>& stopwords,
                    bool jaccard = false);

std::set<std::string> ParseStopwords(std::string_view text);
const std::set<std::string>& DefaultStopwords();

}  // namespace itn

#endif  // ITN_EVAL_HPP_
