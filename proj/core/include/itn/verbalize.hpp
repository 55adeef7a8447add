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

#ifndef ITN_VERBALIZE_HPP_
#define ITN_VERBALIZE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "itn/extract.hpp"
#include "itn/grammar.hpp"
#include "itn/types.hpp"

namespace itn {

// Which template element produced a spoken token.
struct TokenOrigin {
  std::size_t rule = 0;  // index into Grammar::rules()
  std::size_t alternative = 0;
  std::size_t position = 0;
};

struct SpokenForm {
  std::vector<std::string> tokens;
  std::vector<TokenOrigin> origins;  // parallel to tokens
};

struct VariantSet {
  WrittenEntity entity;
  std::vector<SpokenForm> spoken_forms;  // de-duplicated, generation order
};

struct AugmentConfig {
  std::size_t n_variants_per_sentence = 8;
  std::size_t max_expansions_per_entity = 64;
  std::uint64_t seed = 17;
  // When false, AugmentCorpus writes pairs without generation traces, the
  // shape of transcribed in-domain data.
  bool keep_trace = true;

  void Validate() const;
};

// Every spoken form of a canonicalized entity: the cross product of all
// matching rule alternatives, expanded depth-first in rule-file order and
// truncated at `max_expansions`. Throws Error(kNoRuleMatch) when nothing in
// the entity's group covers the canonical text.
VariantSet ExpandEntity(const WrittenEntity& entity, const Grammar& grammar,
                        std::size_t max_expansions = 64);

// Spoken-side rendering of plain text: whitespace split, ASCII lower-cased,
// leading/trailing punctuation stripped.
std::vector<std::string> SpokenizeText(std::string_view text);

// Replaces every entity of `sentence` with sampled spoken variants. When the
// cross product over entities exceeds n_variants_per_sentence, combinations
// are drawn uniformly without replacement from a stream seeded by
// (config.seed, line_index). Errors from any entity propagate.
std::vector<SpokenWrittenPair> AugmentSentence(std::string_view sentence, const AugmentConfig& config,
                                               const Grammar& grammar, const PatternSet& patterns,
                                               std::uint64_t line_index = 0);

struct AugmentStats {
  std::size_t lines = 0;
  std::size_t pairs = 0;
  std::size_t skipped_lines = 0;
  std::size_t written_entities = 0;
  std::size_t spoken_forms = 0;  // sum of variant-set sizes
  std::array<std::size_t, kNumEntityKinds> entity_counts{};

  std::string ToJson() const;
};

// Streams `in` line by line, writing one JSON record per pair to `out`.
// Lines are processed in blocks by `threads` workers; output order and
// content do not depend on the worker count.
AugmentStats AugmentCorpus(std::istream& in, std::ostream& out, const AugmentConfig& config,
                           const Grammar& grammar, const PatternSet& patterns,
                           std::size_t threads = 1);

// Rebuilds the spoken token sequence from the pair's trace and the rule
// templates; tokens outside entities are copied. Throws
// Error(kTraceIncomplete) when an entry points at no template word.
std::vector<std::string> ReplayTrace(const SpokenWrittenPair& pair, const Grammar& grammar);

// Deterministic 64-bit mixing and bounded draws shared by the samplers.
std::uint64_t SplitMix64(std::uint64_t x);
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();
  std::uint64_t Below(std::uint64_t bound);  // uniform in [0, bound)
  double Uniform();                          // [0, 1)

 private:
  std::uint64_t state_;
};

}  // namespace itn

#endif  // ITN_VERBALIZE_HPP_
