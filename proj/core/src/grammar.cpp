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

#include "itn/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "itn/embedded.hpp"
#include "itn/error.hpp"

namespace itn {
namespace {

std::string Trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void SyntaxError(std::string_view origin, std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kGrammarSyntax,
              std::string(origin) + ":" + std::to_string(line) + ": " + msg);
}

// Locates the [open, close] character positions of each capturing group.
std::vector<std::pair<std::size_t, std::size_t>> CaptureGroupSpans(const std::string& pattern) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<std::pair<std::size_t, long>> stack;  // (open pos, capture index or -1)
  bool in_class = false;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    char c = pattern[i];
    if (c == '\\') {
      ++i;
      continue;
    }
    if (in_class) {
      if (c == ']') in_class = false;
      continue;
    }
    if (c == '[') {
      in_class = true;
    } else if (c == '(') {
      bool capturing = !(i + 1 < pattern.size() && pattern[i + 1] == '?');
      if (capturing) {
        spans.emplace_back(i, std::string::npos);
        stack.emplace_back(i, static_cast<long>(spans.size() - 1));
      } else {
        stack.emplace_back(i, -1);
      }
    } else if (c == ')' && !stack.empty()) {
      if (stack.back().second >= 0) spans[stack.back().second].second = i;
      stack.pop_back();
    }
  }
  return spans;
}

Template ParseTemplate(std::string_view text, std::string_view origin, std::size_t line) {
  Template out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    TemplateElement el;
    if (tok.size() >= 3 && tok.front() == '{' && tok.back() == '}') {
      std::string body = tok.substr(1, tok.size() - 2);
      auto colon = body.find(':');
      std::string num = body.substr(0, colon);
      if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit)) {
        SyntaxError(origin, line, "bad template reference " + tok);
      }
      el.capture = std::stoul(num);
      if (colon == std::string::npos) {
        el.type = TemplateElement::Type::kCapture;
      } else {
        el.type = TemplateElement::Type::kInvoke;
        el.group = body.substr(colon + 1);
        if (el.group.empty()) SyntaxError(origin, line, "empty rule reference in " + tok);
      }
    } else {
      el.type = TemplateElement::Type::kWord;
      el.word = tok;
    }
    out.push_back(std::move(el));
  }
  if (out.empty()) SyntaxError(origin, line, "emit template produces no tokens");
  return out;
}

}  // namespace

std::string TemplateElement::ToString() const {
  switch (type) {
    case Type::kWord: return word;
    case Type::kCapture: return "{" + std::to_string(capture) + "}";
    case Type::kInvoke: return "{" + std::to_string(capture) + ":" + group + "}";
  }
  return {};
}

bool RewriteRule::CaptureIsWholeSpan(std::size_t n) const {
  if (n == 0) return true;
  auto spans = CaptureGroupSpans(pattern);
  if (n > spans.size()) return false;
  return spans[n - 1].first == 0 && spans[n - 1].second == pattern.size() - 1;
}

Grammar Grammar::Parse(std::string_view text, std::string_view origin) {
  Grammar g;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  RewriteRule* current = nullptr;
  auto finish = [&](std::size_t line) {
    if (current == nullptr) return;
    if (current->pattern.empty()) SyntaxError(origin, line, "rule " + current->id + " has no match");
    if (current->alternatives.empty()) {
      SyntaxError(origin, line, "rule " + current->id + " has no emit lines");
    }
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp);
    std::string value = sp == std::string::npos ? "" : Trim(std::string_view(line).substr(sp));
    if (key == "rule") {
      finish(line_no);
      if (value.empty() || value.find_first_of(" \t{}") != std::string::npos) {
        SyntaxError(origin, line_no, "bad rule id '" + value + "'");
      }
      if (g.by_id_.count(value) != 0) SyntaxError(origin, line_no, "duplicate rule id " + value);
      g.rules_.emplace_back();
      current = &g.rules_.back();
      current->id = value;
      current->line = line_no;
      g.by_id_.emplace(value, g.rules_.size() - 1);
    } else if (current == nullptr) {
      SyntaxError(origin, line_no, "'" + key + "' outside a rule stanza");
    } else if (key == "match") {
      if (!current->pattern.empty()) SyntaxError(origin, line_no, "second match line");
      current->pattern = value;
      try {
        current->regex = std::regex(value, std::regex::ECMAScript | std::regex::optimize);
      } catch (const std::regex_error& e) {
        SyntaxError(origin, line_no, "bad pattern '" + value + "': " + e.what());
      }
      current->capture_count = current->regex.mark_count();
    } else if (key == "emit") {
      if (current->pattern.empty()) SyntaxError(origin, line_no, "emit before match");
      Template tpl = ParseTemplate(value, origin, line_no);
      for (const auto& el : tpl) {
        if (el.type != TemplateElement::Type::kWord && el.capture > current->capture_count) {
          SyntaxError(origin, line_no, "template references missing capture " + el.ToString());
        }
      }
      current->alternatives.push_back(std::move(tpl));
    } else {
      SyntaxError(origin, line_no, "unknown directive '" + key + "'");
    }
  }
  finish(line_no);
  g.Index();
  g.CheckReferences();
  g.CheckAcyclic();
  return g;
}

Grammar Grammar::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open grammar " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path);
}

const Grammar& Grammar::Default() {
  static const Grammar g = Parse(embedded::grammar(), "<default grammar>");
  return g;
}

void Grammar::Index() {
  groups_.clear();
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const std::string& id = rules_[i].id;
    for (std::size_t pos = id.find('.'); pos != std::string::npos; pos = id.find('.', pos + 1)) {
      groups_[id.substr(0, pos)].push_back(i);
    }
    groups_[id].push_back(i);
  }
}

const std::vector<std::size_t>& Grammar::Group(std::string_view group) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = groups_.find(group);
  return it == groups_.end() ? kEmpty : it->second;
}

const RewriteRule* Grammar::Find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &rules_[it->second];
}

std::set<std::string> Grammar::SpokenVocabulary() const {
  std::set<std::string> words;
  for (const auto& r : rules_) {
    for (const auto& alt : r.alternatives) {
      for (const auto& el : alt) {
        if (el.type == TemplateElement::Type::kWord) words.insert(el.word);
      }
    }
  }
  return words;
}

void Grammar::CheckReferences() const {
  for (const auto& r : rules_) {
    for (const auto& alt : r.alternatives) {
      for (const auto& el : alt) {
        if (el.type == TemplateElement::Type::kInvoke && Group(el.group).empty()) {
          throw Error(ErrorCode::kGrammarSyntax,
                      "rule " + r.id + " references unknown group '" + el.group + "'");
        }
      }
    }
  }
}

// Only invocations on a whole-span capture can recurse without consuming
// input, so those edges must form a DAG.
void Grammar::CheckAcyclic() const {
  const std::size_t n = rules_.size();
  std::vector<std::vector<std::size_t>> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& alt : rules_[i].alternatives) {
      for (const auto& el : alt) {
        if (el.type != TemplateElement::Type::kInvoke) continue;
        if (!rules_[i].CaptureIsWholeSpan(el.capture)) continue;
        for (std::size_t j : Group(el.group)) edges[i].push_back(j);
      }
    }
  }
  enum class Mark { kWhite, kGrey, kBlack };
  std::vector<Mark> mark(n, Mark::kWhite);
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> visit = [&](std::size_t u) {
    mark[u] = Mark::kGrey;
    path.push_back(u);
    for (std::size_t v : edges[u]) {
      if (mark[v] == Mark::kGrey) {
        std::string cycle;
        auto it = std::find(path.begin(), path.end(), v);
        for (; it != path.end(); ++it) cycle += rules_[*it].id + " -> ";
        cycle += rules_[v].id;
        throw Error(ErrorCode::kGrammarCycle, "rule cycle: " + cycle);
      }
      if (mark[v] == Mark::kWhite) visit(v);
    }
    path.pop_back();
    mark[u] = Mark::kBlack;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (mark[i] == Mark::kWhite) visit(i);
  }
}

}  // namespace itn
