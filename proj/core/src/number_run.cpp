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

#include <algorithm>
#include <cctype>

#include "itn/error.hpp"
#include "itn/labels.hpp"
#include "render.hpp"

namespace itn {
namespace {

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

bool AllZeros(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0'; });
}

std::size_t TrailingZeros(std::string_view s) {
  std::size_t n = 0;
  while (n < s.size() && s[s.size() - 1 - n] == '0') ++n;
  return n;
}

std::string_view StripLeadingZeros(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return s;
}

[[noreturn]] void Malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedNumberRun, why);
}

class CardinalAccumulator {
 public:
  bool empty() const { return total_.empty() && cur_.empty(); }

  void Magnitude(std::string_view output) {
    std::size_t zeros = RewriteLexicon::MagnitudeZeros(output);
    std::string base = cur_.empty() ? "1" : cur_;
    if (zeros < 3) {
      cur_ = base + std::string(zeros, '0');
    } else {
      total_ = AddDecimal(total_.empty() ? "0" : total_, base + std::string(zeros, '0'));
      cur_.clear();
    }
  }

  void Value(std::string_view v) {
    if (cur_.empty() || AllZeros(cur_)) {
      cur_ += v;
      return;
    }
    std::string_view sig = StripLeadingZeros(v);
    if (!AllZeros(sig) && sig.size() <= TrailingZeros(cur_)) {
      cur_.replace(cur_.size() - sig.size(), sig.size(), sig);
    } else {
      cur_ += v;
    }
  }

  // The part of Flush() that no further cardinal token can change, assuming
  // magnitudes arrive in decreasing order.
  std::string StablePrefix() const {
    std::string s = total_.empty() ? cur_ : total_;
    while (!s.empty() && s.back() == '0') s.pop_back();
    return s;
  }

  std::string Flush() {
    std::string out;
    if (total_.empty()) {
      out = cur_;
    } else {
      out = AddDecimal(total_, cur_.empty() ? "0" : cur_);
    }
    total_.clear();
    cur_.clear();
    return out;
  }

 private:
  std::string total_;
  std::string cur_;
};

}  // namespace

std::string AddDecimal(std::string_view a, std::string_view b) {
  if (!AllDigits(a) || !AllDigits(b)) Malformed("non-digit operand");
  std::string out;
  int carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
    int d = carry;
    if (i < a.size()) d += a[a.size() - 1 - i] - '0';
    if (i < b.size()) d += b[b.size() - 1 - i] - '0';
    out.push_back(static_cast<char>('0' + d % 10));
    carry = d / 10;
  }
  std::reverse(out.begin(), out.end());
  return std::string(StripLeadingZeros(out));
}

std::optional<std::string> ShiftDecimal(std::string_view number, std::size_t zeros) {
  std::size_t dot = number.find('.');
  std::string_view int_part = number.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : number.substr(dot + 1);
  if (!AllDigits(int_part) || (dot != std::string_view::npos && !AllDigits(frac))) {
    return std::nullopt;
  }
  std::string digits(int_part);
  std::size_t moved = std::min(zeros, frac.size());
  digits += frac.substr(0, moved);
  digits.append(zeros - moved, '0');
  std::string out(StripLeadingZeros(digits));
  if (moved < frac.size()) {
    out += '.';
    out += frac.substr(moved);
  }
  return out;
}

namespace {

std::string Compose(const std::vector<RunPart>& parts, bool stable_only) {
  std::string out;
  std::string suffix;
  CardinalAccumulator acc;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const RunPart& p = parts[i];
    if (!suffix.empty()) Malformed("'" + suffix + "' form must end its number run");
    if (p.output.empty()) continue;
    if (p.rewrite == Rewrite::kVerbatim) {
      out += acc.Flush();
      out += p.output;
      continue;
    }
    if (!IsCardinalFamily(p.rewrite)) Malformed("non-numeric rewrite inside a number run");
    if (IsMagnitude(p.rewrite)) {
      if (!AllDigits(p.output)) Malformed("magnitude output '" + p.output + "'");
      acc.Magnitude(p.output);
      continue;
    }
    std::string_view v = p.output;
    if (p.rewrite == Rewrite::kOrdinal || p.rewrite == Rewrite::kCardinalDecade) {
      std::size_t cut = v.size();
      while (cut > 0 && std::isalpha(static_cast<unsigned char>(v[cut - 1]))) --cut;
      suffix = std::string(v.substr(cut));
      v = v.substr(0, cut);
      if (suffix.empty()) Malformed("ordinal or decade output '" + p.output + "' has no suffix");
    }
    if (!AllDigits(v)) Malformed("cardinal output '" + p.output + "'");
    acc.Value(v);
  }
  if (stable_only) return out + acc.StablePrefix();
  out += acc.Flush();
  return out + suffix;
}

}  // namespace

std::string ComposeNumberRun(const std::vector<RunPart>& parts) { return Compose(parts, false); }

namespace detail {

std::string StableRunPrefix(const std::vector<RunPart>& parts) { return Compose(parts, true); }

}  // namespace detail

}  // namespace itn
