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

#ifndef ITN_GRAMMAR_HPP_
#define ITN_GRAMMAR_HPP_

#include <cstddef>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace itn {

struct TemplateElement {
  enum class Type { kWord, kCapture, kInvoke };
  Type type = Type::kWord;
  std::string word;     // kWord
  std::size_t capture = 0;  // kCapture, kInvoke
  std::string group;    // kInvoke

  std::string ToString() const;
};

using Template = std::vector<TemplateElement>;

// One grammar stanza: a written-side pattern and its spoken alternatives.
struct RewriteRule {
  std::string id;
  std::string pattern;
  std::regex regex;
  std::vector<Template> alternatives;
  std::size_t capture_count = 0;
  std::size_t line = 0;

  // True when capture `n` always spans the entire matched input, so invoking
  // a group on it does not shrink the input.
  bool CaptureIsWholeSpan(std::size_t n) const;
};

// Ordered rule set with group lookup. A group name selects every rule whose
// id equals the name or begins with "name.", in file order.
class Grammar {
 public:
  static Grammar Parse(std::string_view text, std::string_view origin = "<grammar>");
  static Grammar Load(const std::string& path);
  static const Grammar& Default();

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const std::vector<std::size_t>& Group(std::string_view group) const;
  const RewriteRule* Find(std::string_view id) const;

  // Every literal word any template can emit.
  std::set<std::string> SpokenVocabulary() const;

 private:
  void Index();
  void CheckReferences() const;
  void CheckAcyclic() const;

  std::vector<RewriteRule> rules_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> groups_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

}  // namespace itn

#endif  // ITN_GRAMMAR_HPP_
