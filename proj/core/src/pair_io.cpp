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

#include "itn/pair_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "itn/error.hpp"
#include "json.hpp"

namespace itn {

using nlohmann::json;

std::string PairToJsonLine(const SpokenWrittenPair& pair) {
  json j;
  j["spoken"] = pair.spoken;
  j["written"] = pair.written;
  if (pair.trace) {
    json trace = json::array();
    for (const auto& t : *pair.trace) {
      trace.push_back({{"tok_idx", t.token_index},
                       {"rule", t.rule},
                       {"alt", t.alternative},
                       {"pos", t.position},
                       {"entity_kind", std::string(EntityKindName(t.kind))},
                       {"entity_span", {t.entity_span.begin, t.entity_span.end}}});
    }
    j["trace"] = std::move(trace);
  }
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

SpokenWrittenPair PairFromJsonLine(std::string_view line) {
  try {
    json j = json::parse(line);
    SpokenWrittenPair p;
    p.spoken = j.at("spoken").get<std::vector<std::string>>();
    p.written = j.at("written").get<std::string>();
    if (auto it = j.find("trace"); it != j.end() && !it->is_null()) {
      p.trace.emplace();
      for (const auto& t : *it) {
        TraceEntry e;
        e.token_index = t.at("tok_idx").get<std::size_t>();
        e.rule = t.at("rule").get<std::string>();
        e.alternative = t.at("alt").get<std::size_t>();
        e.position = t.at("pos").get<std::size_t>();
        auto kind = ParseEntityKind(t.at("entity_kind").get<std::string>());
        if (!kind) throw Error(ErrorCode::kIo, "unknown entity kind in trace");
        e.kind = *kind;
        const auto& span = t.at("entity_span");
        e.entity_span = {span.at(0).get<std::size_t>(), span.at(1).get<std::size_t>()};
        p.trace->push_back(std::move(e));
      }
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad pair record: ") + e.what());
  }
}

std::vector<SpokenWrittenPair> ReadPairs(std::istream& in) {
  std::vector<SpokenWrittenPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      pairs.push_back(PairFromJsonLine(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kIo, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return pairs;
}

std::vector<SpokenWrittenPair> ReadPairsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadPairs(in);
}

void WritePairs(std::ostream& out, const std::vector<SpokenWrittenPair>& pairs) {
  for (const auto& p : pairs) out << PairToJsonLine(p) << '\n';
}

std::vector<std::string> ReadLines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> ReadLinesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadLines(in);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace itn
