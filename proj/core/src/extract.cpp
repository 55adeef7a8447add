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

#include "itn/extract.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "itn/embedded.hpp"
#include "itn/error.hpp"

namespace itn {
namespace {

bool IsAsciiAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string Trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string JoinAlternation(std::vector<std::string> words) {
  // Longest first so that e.g. "kg" is preferred over "g".
  std::stable_sort(words.begin(), words.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += '|';
    for (char c : w) {
      if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) out += '\\';
      out += c;
    }
  }
  return out;
}

std::string ReplaceAll(std::string s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::string StripCommas(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ',') out += c;
  }
  return out;
}

[[noreturn]] void Malformed(EntityKind kind, std::string_view text, std::string_view why) {
  throw Error(ErrorCode::kMalformedEntity, std::string(EntityKindName(kind)) + " '" +
                                               std::string(text) + "': " + std::string(why));
}

// "1.5" shifted by 3 zeros -> "1500".
std::string ShiftDecimal(std::string_view number, std::size_t zeros) {
  std::string digits;
  std::size_t point = number.find('.');
  std::size_t int_len = point == std::string_view::npos ? number.size() : point;
  for (char c : number) {
    if (c != '.') digits += c;
  }
  std::size_t new_int_len = int_len + zeros;
  while (digits.size() < new_int_len) digits += '0';
  std::string int_part = digits.substr(0, new_int_len);
  std::string frac = digits.substr(new_int_len);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  auto nz = int_part.find_first_not_of('0');
  int_part = nz == std::string::npos ? "0" : int_part.substr(nz);
  return frac.empty() ? int_part : int_part + "." + frac;
}

std::string OrdinalSuffix(std::string_view digits) {
  int last_two = std::stoi(std::string(digits.substr(digits.size() > 2 ? digits.size() - 2 : 0)));
  if (last_two % 100 >= 11 && last_two % 100 <= 13) return "th";
  switch (last_two % 10) {
    case 1: return "st";
    case 2: return "nd";
    case 3: return "rd";
    default: return "th";
  }
}

const std::regex& NumberRegex() {
  static const std::regex re(R"(^(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?$)");
  return re;
}

struct MeasureParts {
  std::string number;  // commas stripped, magnitude applied
  bool spaced = false;
  std::string unit;
};

MeasureParts ParseMeasure(std::string_view text) {
  static const std::regex re(R"(^((?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?)([KM]?)( ?)(\S+)$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, re)) {
    Malformed(EntityKind::kMeasure, text, "expected <number><unit>");
  }
  MeasureParts parts;
  parts.number = StripCommas(m[1].str());
  if (m[2].length() > 0) parts.number = ShiftDecimal(parts.number, m[2].str() == "K" ? 3 : 6);
  parts.spaced = m[3].length() > 0;
  parts.unit = m[4].str();
  return parts;
}

struct TimeParts {
  int hours = 0;
  int minutes = 0;
};

TimeParts ParseTime(std::string_view text) {
  static const std::regex colon(R"(^(\d{1,2}):(\d{2})$)");
  static const std::regex words(R"(^(\d{1,2}) hours (\d{1,2}) minutes$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, colon) &&
      !std::regex_match(text.begin(), text.end(), m, words)) {
    Malformed(EntityKind::kTime, text, "expected H:MM");
  }
  TimeParts t{std::stoi(m[1].str()), std::stoi(m[2].str())};
  if (t.hours > 23 || t.minutes > 59) Malformed(EntityKind::kTime, text, "out of range");
  return t;
}

std::string WrittenText(EntityKind kind, std::string_view raw) {
  switch (kind) {
    case EntityKind::kCardinal:
    case EntityKind::kCurrency:
    case EntityKind::kDecade:
      return CanonicalText(kind, raw);
    case EntityKind::kMeasure: {
      MeasureParts p = ParseMeasure(raw);
      return p.number + (p.spaced ? " " : "") + p.unit;
    }
    case EntityKind::kTime: {
      TimeParts t = ParseTime(raw);
      std::string mm = std::to_string(t.minutes);
      if (mm.size() < 2) mm = "0" + mm;
      return std::to_string(t.hours) + ":" + mm;
    }
    default:
      CanonicalText(kind, raw);  // validates
      return std::string(raw);
  }
}

}  // namespace

PatternSet PatternSet::Parse(std::string_view text, std::string_view origin) {
  PatternSet set;
  struct Pending {
    EntityKind kind;
    int priority = 100;
    std::vector<std::string> raw_patterns;
    std::size_t line;
  };
  std::vector<Pending> pending;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kPatternSyntax,
                std::string(origin) + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string value = sp == std::string::npos ? "" : Trim(std::string_view(line).substr(sp));
    if (key == "units") {
      set.units_ = SplitWhitespace(value);
    } else if (key == "abbreviations") {
      set.abbreviations_ = SplitWhitespace(value);
    } else if (key == "kind") {
      auto kind = ParseEntityKind(value);
      if (!kind) fail("unknown entity kind '" + value + "'");
      pending.push_back({*kind, 100, {}, line_no});
    } else if (pending.empty()) {
      fail("'" + key + "' before any kind line");
    } else if (key == "pattern") {
      pending.back().raw_patterns.push_back(value);
    } else if (key == "priority") {
      try {
        pending.back().priority = std::stoi(value);
      } catch (const std::exception&) {
        fail("bad priority '" + value + "'");
      }
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  const std::string units = JoinAlternation(set.units_);
  const std::string abbrevs = JoinAlternation(set.abbreviations_);
  for (auto& p : pending) {
    if (p.raw_patterns.empty()) {
      line_no = p.line;
      fail("kind " + std::string(EntityKindName(p.kind)) + " has no pattern");
    }
    EntityPattern ep;
    ep.kind = p.kind;
    ep.priority = p.priority;
    for (auto& src : p.raw_patterns) {
      std::string expanded = ReplaceAll(ReplaceAll(src, "{units}", units), "{abbreviations}", abbrevs);
      try {
        // A match may not run into a following letter or digit.
        ep.regexes.emplace_back("(?:" + expanded + ")(?![A-Za-z0-9])", std::regex::ECMAScript);
      } catch (const std::regex_error& e) {
        line_no = p.line;
        fail("bad pattern '" + expanded + "': " + e.what());
      }
      ep.sources.push_back(std::move(expanded));
    }
    set.patterns_.push_back(std::move(ep));
  }
  return set;
}

PatternSet PatternSet::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open pattern config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path);
}

const PatternSet& PatternSet::Default() {
  static const PatternSet set = Parse(embedded::patterns(), "<default patterns>");
  return set;
}

std::vector<WrittenEntity> ExtractEntities(std::string_view sentence, const PatternSet& patterns) {
  struct Candidate {
    ByteSpan span;
    EntityKind kind;
    int priority;
  };
  std::vector<Candidate> candidates;
  for (const auto& p : patterns.patterns()) {
    for (const auto& re : p.regexes) {
      using It = std::regex_iterator<std::string_view::const_iterator>;
      for (It it(sentence.begin(), sentence.end(), re), end; it != end; ++it) {
        std::size_t b = static_cast<std::size_t>(it->position());
        std::size_t len = static_cast<std::size_t>(it->length());
        if (len == 0) continue;
        if (b > 0 && IsAsciiAlnum(sentence[b - 1])) continue;
        candidates.push_back({{b, b + len}, p.kind, p.priority});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.span.size() != b.span.size()) return a.span.size() > b.span.size();
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.span.begin < b.span.begin;
  });
  std::vector<WrittenEntity> out;
  for (const auto& c : candidates) {
    bool clash = std::any_of(out.begin(), out.end(),
                             [&](const WrittenEntity& e) { return e.span.Overlaps(c.span); });
    if (clash) continue;
    WrittenEntity e;
    e.kind = c.kind;
    e.span = c.span;
    e.raw = std::string(sentence.substr(c.span.begin, c.span.size()));
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(),
            [](const WrittenEntity& a, const WrittenEntity& b) { return a.span.begin < b.span.begin; });
  return out;
}

std::string CanonicalText(EntityKind kind, std::string_view text) {
  switch (kind) {
    case EntityKind::kCardinal: {
      if (!std::regex_match(text.begin(), text.end(), NumberRegex())) {
        Malformed(kind, text, "expected digits");
      }
      return StripCommas(text);
    }
    case EntityKind::kCurrency: {
      static const std::regex re(R"(^([$]|£|€)((?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d{1,2})?)$)");
      std::match_results<std::string_view::const_iterator> m;
      if (!std::regex_match(text.begin(), text.end(), m, re)) {
        Malformed(kind, text, "expected <symbol><amount>");
      }
      return m[1].str() + StripCommas(m[2].str());
    }
    case EntityKind::kFraction: {
      static const std::regex re(R"(^(\d+)\s*/\s*(\d+)$)");
      std::match_results<std::string_view::const_iterator> m;
      if (!std::regex_match(text.begin(), text.end(), m, re)) Malformed(kind, text, "expected a/b");
      if (std::stoull("0" + m[2].str()) == 0) Malformed(kind, text, "zero denominator");
      return m[1].str() + "/" + m[2].str();
    }
    case EntityKind::kPercent: {
      static const std::regex re(R"(^\d+(?:\.\d+)?%$)");
      if (!std::regex_match(text.begin(), text.end(), re)) Malformed(kind, text, "expected n%");
      return std::string(text);
    }
    case EntityKind::kMeasure: {
      MeasureParts p = ParseMeasure(text);
      return p.number + " " + p.unit;
    }
    case EntityKind::kOrdinal: {
      static const std::regex re(R"(^(\d+)(st|nd|rd|th)$)");
      std::match_results<std::string_view::const_iterator> m;
      if (!std::regex_match(text.begin(), text.end(), m, re)) Malformed(kind, text, "expected nth");
      if (OrdinalSuffix(m[1].str()) != m[2].str()) Malformed(kind, text, "wrong ordinal suffix");
      return std::string(text);
    }
    case EntityKind::kDecade: {
      static const std::regex re(R"(^'?((?:\d\d)?\d0s)$)");
      std::match_results<std::string_view::const_iterator> m;
      if (!std::regex_match(text.begin(), text.end(), m, re)) Malformed(kind, text, "expected NNs");
      return m[1].str();
    }
    case EntityKind::kTime: {
      TimeParts t = ParseTime(text);
      return std::to_string(t.hours) + " hours " + std::to_string(t.minutes) + " minutes";
    }
    case EntityKind::kPhoneNumber: {
      static const std::regex re(R"(^(\d{3})[-.](\d{3})(?:[-.](\d{4}))?$)");
      static const std::regex seven(R"(^(\d{3})[-.](\d{4})$)");
      std::match_results<std::string_view::const_iterator> m;
      if (std::regex_match(text.begin(), text.end(), m, seven)) return m[1].str() + "-" + m[2].str();
      if (std::regex_match(text.begin(), text.end(), m, re) && m[3].matched) {
        return m[1].str() + "-" + m[2].str() + "-" + m[3].str();
      }
      Malformed(kind, text, "expected NNN-NNNN or NNN-NNN-NNNN");
    }
    case EntityKind::kAbbreviation: {
      if (text.empty() || text.back() != '.') Malformed(kind, text, "expected trailing period");
      return std::string(text);
    }
  }
  Malformed(kind, text, "unsupported kind");
}

WrittenEntity Canonicalize(WrittenEntity entity) {
  entity.canonical = CanonicalText(entity.kind, entity.raw);
  entity.written = WrittenText(entity.kind, entity.raw);
  return entity;
}

}  // namespace itn
