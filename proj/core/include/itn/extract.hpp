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

#ifndef ITN_EXTRACT_HPP_
#define ITN_EXTRACT_HPP_

#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "itn/types.hpp"

namespace itn {

struct EntityPattern {
  EntityKind kind = EntityKind::kCardinal;
  int priority = 0;
  std::vector<std::string> sources;  // after {units}/{abbreviations} expansion
  std::vector<std::regex> regexes;
};

// Extraction patterns per entity kind, loaded from the stanza config format
// (`kind`, `pattern`, `priority`, plus `units` / `abbreviations` lists).
class PatternSet {
 public:
  static PatternSet Parse(std::string_view text, std::string_view origin = "<patterns>");
  static PatternSet Load(const std::string& path);
  static const PatternSet& Default();

  const std::vector<EntityPattern>& patterns() const { return patterns_; }
  const std::vector<std::string>& units() const { return units_; }

 private:
  std::vector<EntityPattern> patterns_;
  std::vector<std::string> units_;
  std::vector<std::string> abbreviations_;
};

// Finds entity spans in `sentence`. Spans are non-overlapping and sorted by
// start offset; among overlapping candidates the longer span wins, then the
// higher-priority kind. Only `kind`, `span` and `raw` are filled.
std::vector<WrittenEntity> ExtractEntities(std::string_view sentence, const PatternSet& patterns);

// Kind-specific cleanup of a raw span into the verbalizer's input form.
// Throws Error(kMalformedEntity) when the text violates its kind's shape.
std::string CanonicalText(EntityKind kind, std::string_view text);

// Fills `canonical` and `written` from `raw`. Idempotent.
WrittenEntity Canonicalize(WrittenEntity entity);

}  // namespace itn

#endif  // ITN_EXTRACT_HPP_
