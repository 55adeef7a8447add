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

#ifndef ITN_PAIR_IO_HPP_
#define ITN_PAIR_IO_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "itn/types.hpp"

namespace itn {

// One JSON object per line:
//   {"spoken": [...], "written": "...", "trace": [...]}
// The trace key is omitted for pairs without one.
std::string PairToJsonLine(const SpokenWrittenPair& pair);

// Throws Error(kIo) on malformed JSON or missing fields.
SpokenWrittenPair PairFromJsonLine(std::string_view line);

std::vector<SpokenWrittenPair> ReadPairs(std::istream& in);
std::vector<SpokenWrittenPair> ReadPairsFile(const std::string& path);
void WritePairs(std::ostream& out, const std::vector<SpokenWrittenPair>& pairs);

// Plain text corpora: one sentence per line, blank lines dropped.
std::vector<std::string> ReadLines(std::istream& in);
std::vector<std::string> ReadLinesFile(const std::string& path);

std::string ReadFile(const std::string& path);

}  // namespace itn

#endif  // ITN_PAIR_IO_HPP_
