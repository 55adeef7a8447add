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

#ifndef ITN_LEXICON_HPP_
#define ITN_LEXICON_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "itn/types.hpp"

namespace itn {

// Spoken word -> written fragment table, keyed by (word, Rewrite class).
//
// File format is UTF-8 TSV `word<TAB>class<TAB>output` with `#` comments.
// The output column may be empty: such words (e.g. the "and" of "one
// hundred and five") contribute nothing to a number run.
class RewriteLexicon {
 public:
  RewriteLexicon() = default;

  static RewriteLexicon Parse(std::string_view text, std::string_view origin = "<lexicon>");
  static RewriteLexicon Load(const std::string& path);
  static const RewriteLexicon& Default();

  // Throws Error(kUnknownWord) when (word, cls) has no entry or cls is None.
  const std::string& Lookup(std::string_view word, Rewrite cls) const;
  bool Contains(std::string_view word, Rewrite cls) const;

  // Classes recorded for `word`, ascending enum order.
  std::vector<Rewrite> ClassesOf(std::string_view word) const;
  std::set<std::string> Words() const;
  std::size_t size() const { return entries_.size(); }

  void Add(std::string word, Rewrite cls, std::string output);

  // Decimal value of a magnitude class word's output, e.g. "1000" -> 3 zeros.
  static std::size_t MagnitudeZeros(std::string_view output);

 private:
  std::map<std::pair<std::string, Rewrite>, std::string, std::less<>> entries_;
  std::map<std::string, std::vector<Rewrite>, std::less<>> classes_;
};

}  // namespace itn

#endif  // ITN_LEXICON_HPP_
