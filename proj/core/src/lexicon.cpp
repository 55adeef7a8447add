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

#include "itn/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "itn/embedded.hpp"
#include "itn/error.hpp"

namespace itn {

void RewriteLexicon::Add(std::string word, Rewrite cls, std::string output) {
  if (cls == Rewrite::kNone) {
    throw Error(ErrorCode::kLexiconSyntax, "class None cannot carry an entry for '" + word + "'");
  }
  auto key = std::make_pair(word, cls);
  if (entries_.count(key) != 0) {
    throw Error(ErrorCode::kLexiconSyntax, "duplicate entry (" + word + ", " +
                                               std::string(RewriteName(cls)) + ")");
  }
  entries_.emplace(std::move(key), std::move(output));
  auto& classes = classes_[word];
  classes.insert(std::upper_bound(classes.begin(), classes.end(), cls), cls);
}

RewriteLexicon RewriteLexicon::Parse(std::string_view text, std::string_view origin) {
  RewriteLexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() == 2) cols.emplace_back();
    if (cols.size() != 3 || cols[0].empty()) {
      throw Error(ErrorCode::kLexiconSyntax, std::string(origin) + ":" +
                                                 std::to_string(line_no) +
                                                 ": expected word<TAB>class<TAB>output");
    }
    Rewrite cls;
    try {
      cls = ParseRewrite(cols[1]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kLexiconSyntax,
                  std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
    lex.Add(cols[0], cls, cols[2]);
  }
  return lex;
}

RewriteLexicon RewriteLexicon::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path);
}

const RewriteLexicon& RewriteLexicon::Default() {
  static const RewriteLexicon lex = Parse(embedded::lexicon(), "<default lexicon>");
  return lex;
}

const std::string& RewriteLexicon::Lookup(std::string_view word, Rewrite cls) const {
  auto it = entries_.find(std::make_pair(std::string(word), cls));
  if (it == entries_.end()) {
    throw Error(ErrorCode::kUnknownWord,
                "'" + std::string(word) + "' as " + std::string(RewriteName(cls)));
  }
  return it->second;
}

bool RewriteLexicon::Contains(std::string_view word, Rewrite cls) const {
  return entries_.count(std::make_pair(std::string(word), cls)) != 0;
}

std::vector<Rewrite> RewriteLexicon::ClassesOf(std::string_view word) const {
  auto it = classes_.find(word);
  return it == classes_.end() ? std::vector<Rewrite>{} : it->second;
}

std::set<std::string> RewriteLexicon::Words() const {
  std::set<std::string> words;
  for (const auto& [w, _] : classes_) words.insert(w);
  return words;
}

std::size_t RewriteLexicon::MagnitudeZeros(std::string_view output) {
  if (output.empty() || output[0] != '1') return 0;
  std::size_t zeros = 0;
  for (std::size_t i = 1; i < output.size(); ++i) {
    if (output[i] != '0') return 0;
    ++zeros;
  }
  return zeros;
}

}  // namespace itn
