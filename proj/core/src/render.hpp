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

// Rendering shared by ApplyLabels and the label search.

#ifndef ITN_SRC_RENDER_HPP_
#define ITN_SRC_RENDER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "itn/labels.hpp"
#include "itn/lexicon.hpp"
#include "itn/types.hpp"

namespace itn::detail {

struct Region {
  Post type = Post::kNone;
  std::size_t begin = 0;  // token index of PostStart
  std::size_t end = 0;    // token index of PostEnd; unset while open
  bool open = false;
};

struct Rendered {
  // Literal chunks. In a partial render, consecutive chunks are separated by
  // an as yet unknown currency symbol (an open MajorCurrency region).
  std::vector<std::string> chunks;
  // Partial only: no open region and no number run that could still grow.
  bool clean = true;
};

// Renders the first `count` rows. With `partial` set, open regions are
// tolerated and whatever could still change is left out of the chunks.
Rendered Render(const std::vector<std::string>& tokens, const std::vector<LabelRow>& rows,
                std::size_t count, const RewriteLexicon& lexicon, bool partial);

// Regions opened by the first `count` rows. Throws kUnbalancedMarkers.
std::vector<Region> CollectRegions(const std::vector<LabelRow>& rows, std::size_t count,
                                   bool allow_open);

bool IsMinorSymbol(std::string_view output);

// Leading text of a number run that later tokens of the same run cannot
// change. Throws like ComposeNumberRun.
std::string StableRunPrefix(const std::vector<RunPart>& parts);

}  // namespace itn::detail

#endif  // ITN_SRC_RENDER_HPP_
