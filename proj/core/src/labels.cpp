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

#include "itn/labels.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <ostream>

#include "itn/error.hpp"
#include "render.hpp"

namespace itn {
namespace detail {
namespace {

struct Segment {
  std::string text;
  bool space = true;
  std::size_t first = 0;
  std::size_t last = 0;
  bool run = false;
  bool symbol_before = false;  // open MajorCurrency region starts here
};

[[noreturn]] void BadRegion(const std::string& why) {
  throw Error(ErrorCode::kMalformedRegion, why);
}

// Space-joined text of segs[a, b), ignoring the first segment's own space.
std::string JoinSegments(const std::vector<Segment>& segs, std::size_t a, std::size_t b) {
  std::string out;
  for (std::size_t i = a; i < b; ++i) {
    if (segs[i].text.empty()) continue;
    if (segs[i].space && !out.empty()) out += ' ';
    out += segs[i].text;
  }
  return out;
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

void CheckEndToken(const Region& r, const LabelRow& row, const std::string& output) {
  switch (r.type) {
    case Post::kMajorCurrency:
      if (row.rewrite != Rewrite::kCurrencySymbol) {
        BadRegion("MajorCurrency region must end on a currency symbol");
      }
      break;
    case Post::kMinorCurrency:
      if (row.rewrite != Rewrite::kCurrencySymbol || !IsMinorSymbol(output)) {
        BadRegion("MinorCurrency region must end on a minor currency symbol");
      }
      break;
    case Post::kMeasure:
      if (row.rewrite != Rewrite::kMeasure) BadRegion("Measure region must end on a unit");
      break;
    case Post::kMagnitude:
      if (!IsMagnitude(row.rewrite)) BadRegion("Magnitude region must end on a magnitude word");
      break;
    case Post::kNone:
      break;
  }
}

}  // namespace

bool IsMinorSymbol(std::string_view output) { return output == "¢" || output == "p"; }

std::vector<Region> CollectRegions(const std::vector<LabelRow>& rows, std::size_t count,
                                   bool allow_open) {
  std::vector<Region> regions;
  std::array<std::ptrdiff_t, kNumPost> open;
  open.fill(-1);
  for (std::size_t i = 0; i < count; ++i) {
    if (Post t = rows[i].post_start; t != Post::kNone) {
      auto k = static_cast<std::size_t>(t);
      if (open[k] >= 0) {
        throw Error(ErrorCode::kUnbalancedMarkers, "nested " + std::string(PostName(t)) +
                                                       " start at token " + std::to_string(i));
      }
      open[k] = static_cast<std::ptrdiff_t>(regions.size());
      regions.push_back({t, i, 0, true});
    }
    if (Post t = rows[i].post_end; t != Post::kNone) {
      auto k = static_cast<std::size_t>(t);
      if (open[k] < 0) {
        throw Error(ErrorCode::kUnbalancedMarkers, std::string(PostName(t)) +
                                                       " end without start at token " +
                                                       std::to_string(i));
      }
      Region& r = regions[static_cast<std::size_t>(open[k])];
      r.end = i;
      r.open = false;
      open[k] = -1;
    }
  }
  if (!allow_open) {
    for (const auto& r : regions) {
      if (r.open) {
        throw Error(ErrorCode::kUnbalancedMarkers,
                    std::string(PostName(r.type)) + " region opened at token " +
                        std::to_string(r.begin) + " is never closed");
      }
    }
  }
  // Regions of different types may nest but not cross.
  for (const auto& a : regions) {
    for (const auto& b : regions) {
      std::size_t a_end = a.open ? count : a.end;
      std::size_t b_end = b.open ? count : b.end;
      if (a.begin < b.begin && b.begin <= a_end && a_end < b_end) {
        BadRegion(std::string(PostName(a.type)) + " and " + std::string(PostName(b.type)) +
                  " regions cross");
      }
    }
  }
  return regions;
}

Rendered Render(const std::vector<std::string>& tokens, const std::vector<LabelRow>& rows,
                std::size_t count, const RewriteLexicon& lexicon, bool partial) {
  std::vector<Region> regions = CollectRegions(rows, count, partial);

  std::vector<std::string> outputs(count);
  for (std::size_t i = 0; i < count; ++i) {
    outputs[i] = rows[i].rewrite == Rewrite::kNone ? tokens[i]
                                                    : lexicon.Lookup(tokens[i], rows[i].rewrite);
  }
  for (const auto& r : regions) {
    if (!r.open) CheckEndToken(r, rows[r.end], outputs[r.end]);
  }

  // Segments: single tokens, or number runs composed into one string.
  std::vector<Segment> segs;
  std::vector<std::vector<RunPart>> parts;  // per segment, for runs
  for (std::size_t i = 0; i < count; ++i) {
    const LabelRow& row = rows[i];
    bool number = IsNumberClass(row.rewrite) && row.post_end != Post::kMagnitude;
    bool joins = number && !segs.empty() && segs.back().run && row.space == Space::kOff &&
                 row.prepend == Prepend::kNone && row.post_start == Post::kNone &&
                 rows[i - 1].post_end == Post::kNone;
    if (joins) {
      segs.back().last = i;
      parts.back().push_back({row.rewrite, outputs[i]});
      continue;
    }
    Segment s;
    s.text = std::string(PrependText(row.prepend));
    s.space = row.space == Space::kOn;
    s.first = s.last = i;
    s.run = number;
    if (!number) s.text += outputs[i];
    segs.push_back(std::move(s));
    parts.emplace_back();
    if (number) parts.back().push_back({row.rewrite, outputs[i]});
  }
  bool open_run = partial && !segs.empty() && segs.back().run;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (!segs[k].run) continue;
    bool last = k + 1 == segs.size();
    segs[k].text += open_run && last ? StableRunPrefix(parts[k]) : ComposeNumberRun(parts[k]);
  }

  // Closed regions, innermost first.
  std::vector<Region> closed;
  for (const auto& r : regions) {
    if (!r.open) closed.push_back(r);
  }
  std::stable_sort(closed.begin(), closed.end(), [](const Region& a, const Region& b) {
    return a.end - a.begin < b.end - b.begin;
  });
  auto find_first = [&](std::size_t token) {
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (segs[k].first == token) return k;
    }
    BadRegion("region boundary splits a number run");
  };
  auto find_last = [&](std::size_t token) {
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (segs[k].last == token) return k;
    }
    BadRegion("region boundary splits a number run");
  };
  for (const auto& r : closed) {
    std::size_t a = find_first(r.begin);
    std::size_t b = find_last(r.end);
    Segment merged;
    merged.first = r.begin;
    merged.last = r.end;
    merged.space = segs[a].space;
    switch (r.type) {
      case Post::kMajorCurrency:
        merged.text = segs[b].text + JoinSegments(segs, a, b);
        if (a == b) merged.space = segs[b].space;
        break;
      case Post::kMinorCurrency: {
        std::string inner = JoinSegments(segs, a, b);
        if (!AllDigits(inner) || inner.size() > 2) {
          BadRegion("MinorCurrency amount '" + inner + "' is not one or two digits");
        }
        merged.text = "." + std::string(2 - inner.size(), '0') + inner;
        merged.space = false;
        break;
      }
      case Post::kMeasure:
        merged.text = JoinSegments(segs, a, b + 1);
        break;
      case Post::kMagnitude: {
        std::string inner = JoinSegments(segs, a, b);
        auto shifted = ShiftDecimal(inner, RewriteLexicon::MagnitudeZeros(outputs[r.end]));
        if (!shifted) BadRegion("Magnitude region encloses '" + inner + "'");
        merged.text = *shifted;
        break;
      }
      case Post::kNone:
        break;
    }
    segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(a),
               segs.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(a), std::move(merged));
  }

  // Open regions. A MinorCurrency or Magnitude region must enclose a single
  // number; only its stable digits are shown and nothing after it.
  Rendered out;
  const Region* truncating = nullptr;
  for (const auto& r : regions) {
    if (!r.open) continue;
    out.clean = false;
    if (r.type == Post::kMinorCurrency || r.type == Post::kMagnitude) {
      if (truncating == nullptr || r.begin < truncating->begin) truncating = &r;
    } else if (r.type == Post::kMajorCurrency) {
      segs[find_first(r.begin)].symbol_before = true;
    }
  }
  if (truncating != nullptr) {
    std::size_t a = find_first(truncating->begin);
    if (a + 1 != segs.size()) BadRegion("region must enclose a single number");
    Segment& s = segs[a];
    if (truncating->type == Post::kMinorCurrency) {
      s.text = ".";
      s.space = false;
    } else {
      s.text.erase(std::remove(s.text.begin(), s.text.end(), '.'), s.text.end());
      s.text.erase(0, std::min(s.text.find_first_not_of('0'), s.text.size()));
    }
    segs.resize(a + 1);
  }
  if (open_run) out.clean = false;
  out.chunks.emplace_back();
  bool any = false;
  for (const auto& s : segs) {
    if (s.text.empty() && !s.symbol_before) continue;
    if (s.space && any) out.chunks.back() += ' ';
    if (s.symbol_before) {
      out.chunks.emplace_back();
      any = true;
    }
    out.chunks.back() += s.text;
    any = any || !s.text.empty();
  }
  return out;
}

}  // namespace detail

std::string ApplyLabels(const std::vector<std::string>& spoken, const std::vector<LabelRow>& rows,
                        const RewriteLexicon& lexicon) {
  if (spoken.size() != rows.size()) {
    throw Error(ErrorCode::kAlignmentMismatch, std::to_string(spoken.size()) + " tokens but " +
                                                   std::to_string(rows.size()) + " label rows");
  }
  return detail::Render(spoken, rows, rows.size(), lexicon, false).chunks.front();
}

void WriteLabeledSentence(std::ostream& out, const LabeledSentence& sentence) {
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const LabelRow& r = sentence.rows.at(i);
    out << sentence.tokens[i] << '\t' << RewriteName(r.rewrite) << '\t' << PrependName(r.prepend)
        << '\t' << SpaceName(r.space) << '\t' << PostName(r.post_start) << '\t'
        << PostName(r.post_end) << '\n';
  }
  out << '\n';
}

std::vector<LabeledSentence> ReadLabelFile(std::istream& in) {
  std::vector<LabeledSentence> out;
  LabeledSentence cur;
  std::string line;
  std::size_t lineno = 0;
  auto flush = [&]() {
    if (!cur.tokens.empty()) out.push_back(std::move(cur));
    cur = LabeledSentence{};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = line.find('\t', pos);
      cols.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (cols.size() != 6) {
      throw Error(ErrorCode::kUnknownLabel,
                  "line " + std::to_string(lineno) + ": expected 6 columns, got " +
                      std::to_string(cols.size()));
    }
    LabelRow row;
    row.rewrite = ParseRewrite(cols[1]);
    row.prepend = ParsePrepend(cols[2]);
    row.space = ParseSpace(cols[3]);
    row.post_start = ParsePost(cols[4]);
    row.post_end = ParsePost(cols[5]);
    cur.tokens.push_back(std::move(cols[0]));
    cur.rows.push_back(row);
  }
  flush();
  return out;
}

}  // namespace itn
