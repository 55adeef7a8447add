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

#ifndef ITN_LABELS_HPP_
#define ITN_LABELS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itn/lexicon.hpp"
#include "itn/types.hpp"

namespace itn {

// --- Number runs -----------------------------------------------------------

struct RunPart {
  Rewrite rewrite = Rewrite::kCardinal;
  std::string output;  // lexicon output of the token
};

// Joins the rewrites of one number run into a digit string.
//
// Verbatim parts are copied literally. Maximal stretches of cardinal-family
// parts go through a value accumulator: magnitudes multiply and carry, a
// smaller value fills the trailing zeros of the current group ("one hundred
// twenty" -> 120), and anything else concatenates ("one" "twenty" -> 120).
// Ordinal and decade parts may only close the run; their suffix ("st", "s")
// is re-attached at the end. Throws Error(kMalformedNumberRun).
std::string ComposeNumberRun(const std::vector<RunPart>& parts);

// Decimal string arithmetic used by the accumulator and magnitude regions.
std::string AddDecimal(std::string_view a, std::string_view b);
// "1.5", 3 -> "1500". Returns nullopt when `number` is not a plain decimal.
std::optional<std::string> ShiftDecimal(std::string_view number, std::size_t zeros);

// --- Applying labels -------------------------------------------------------

// Renders spoken tokens to written text under one label row per token.
// Throws Error with kUnbalancedMarkers, kMalformedRegion, kMalformedNumberRun,
// kUnknownWord, or kAlignmentMismatch when the row count is wrong.
std::string ApplyLabels(const std::vector<std::string>& spoken, const std::vector<LabelRow>& rows,
                        const RewriteLexicon& lexicon);

// --- Inferring labels ------------------------------------------------------

struct SearchOptions {
  std::size_t node_budget = 200000;
};

// Depth-first search over candidate rows, pruned by checking that each
// partial rendering is still consistent with `written`. Candidates are tried
// in label-enum order so the first derivation found is deterministic.
// Returns nullopt when no derivation exists or the node budget runs out.
std::optional<std::vector<LabelRow>> InferLabelsSearch(const std::vector<std::string>& spoken,
                                                       std::string_view written,
                                                       const RewriteLexicon& lexicon,
                                                       const SearchOptions& options = {});

// Label inference guided by the augmenter's trace: tokens outside traced
// entities are fixed to identity rows and regions may only open and close
// inside one entity. Throws Error(kTraceIncomplete) when the trace is
// missing, points outside the sentence, or leaves a hole inside an entity,
// and Error(kNoDerivation) if no rows reproduce the written side.
std::vector<LabelRow> InferLabelsFromTrace(const SpokenWrittenPair& pair,
                                           const RewriteLexicon& lexicon,
                                           const SearchOptions& options = {});

// --- Label files -----------------------------------------------------------

struct LabeledSentence {
  std::vector<std::string> tokens;
  std::vector<LabelRow> rows;
};

// TSV, one token per line:
//   token<TAB>rewrite<TAB>prepend<TAB>space<TAB>post_start<TAB>post_end
// with a blank line after each sentence.
void WriteLabeledSentence(std::ostream& out, const LabeledSentence& sentence);
std::vector<LabeledSentence> ReadLabelFile(std::istream& in);

}  // namespace itn

#endif  // ITN_LABELS_HPP_
