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

#include "itn/eval.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "itn/embedded.hpp"
#include "itn/error.hpp"

namespace itn {

std::vector<AlignedPair> AlignTokens(const std::vector<std::string>& ref,
                                     const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // cost[i][j]: edit distance between ref[i..] and hyp[j..].
  std::vector<std::vector<std::size_t>> cost(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        cost[i][j] = m - j;
      } else if (j == m) {
        cost[i][j] = n - i;
      } else {
        std::size_t diag = cost[i + 1][j + 1] + (ref[i] == hyp[j] ? 0 : 1);
        cost[i][j] = std::min({diag, cost[i + 1][j] + 1, cost[i][j + 1] + 1});
      }
    }
  }
  std::vector<AlignedPair> out;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && ref[i] == hyp[j] && cost[i][j] == cost[i + 1][j + 1]) {
      out.push_back({EditOp::kMatch, i++, j++});
    } else if (i < n && j < m && ref[i] != hyp[j] && cost[i][j] == cost[i + 1][j + 1] + 1) {
      out.push_back({EditOp::kSubstitute, i++, j++});
    } else if (i < n && cost[i][j] == cost[i + 1][j] + 1) {
      out.push_back({EditOp::kDelete, i++, std::nullopt});
    } else {
      out.push_back({EditOp::kInsert, std::nullopt, j++});
    }
  }
  return out;
}

std::size_t AlignmentCost(const std::vector<AlignedPair>& alignment) {
  return static_cast<std::size_t>(std::count_if(
      alignment.begin(), alignment.end(), [](const AlignedPair& p) { return p.op != EditOp::kMatch; }));
}

std::optional<EntityKind> ClassifyEntity(std::string_view token) {
  static const std::regex kCurrency(R"(^(?:\$|£|€)\d.*)");
  static const std::regex kFraction(R"(^\d+/\d+$)");
  static const std::regex kCardinal(R"(^\d+$)");
  std::string t(token);
  if (std::regex_match(t, kCurrency)) return EntityKind::kCurrency;
  if (std::regex_match(t, kFraction)) return EntityKind::kFraction;
  if (std::regex_match(t, kCardinal)) return EntityKind::kCardinal;
  return std::nullopt;
}

std::optional<double> KindScore::accuracy() const {
  if (correct + error == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(correct + error);
}

namespace {

void AddScore(KindScore& a, const KindScore& b) {
  a.correct += b.correct;
  a.error += b.error;
}

std::string ScoreJson(const KindScore& s) {
  std::ostringstream os;
  os << "{\"correct\": " << s.correct << ", \"error\": " << s.error << ", \"accuracy\": ";
  if (auto a = s.accuracy()) {
    os.precision(6);
    os << std::fixed << *a;
  } else {
    os << "\"n/a\"";
  }
  os << "}";
  return os.str();
}

}  // namespace

void AccuracyReport::Add(const AccuracyReport& other) {
  AddScore(overall, other.overall);
  AddScore(cardinal, other.cardinal);
  AddScore(currency, other.currency);
  AddScore(fraction, other.fraction);
}

std::string AccuracyReport::ToJson() const {
  return "{\"overall\": " + ScoreJson(overall) + ", \"cardinal\": " + ScoreJson(cardinal) +
         ", \"currency\": " + ScoreJson(currency) + ", \"fraction\": " + ScoreJson(fraction) + "}";
}

AccuracyReport ScoreSentence(const std::vector<std::string>& ref,
                             const std::vector<std::string>& hyp) {
  AccuracyReport report;
  for (const auto& p : AlignTokens(ref, hyp)) {
    if (!p.ref) continue;
    auto kind = ClassifyEntity(ref[*p.ref]);
    if (!kind) continue;
    KindScore* bucket = *kind == EntityKind::kCurrency   ? &report.currency
                        : *kind == EntityKind::kFraction ? &report.fraction
                                                         : &report.cardinal;
    bool ok = p.op == EditOp::kMatch;
    (ok ? bucket->correct : bucket->error) += 1;
    (ok ? report.overall.correct : report.overall.error) += 1;
  }
  return report;
}

AccuracyReport ScoreCorpus(const std::vector<std::string>& ref_lines,
                           const std::vector<std::string>& hyp_lines) {
  if (ref_lines.size() != hyp_lines.size()) {
    throw Error(ErrorCode::kAlignmentMismatch,
                std::to_string(ref_lines.size()) + " reference lines but " +
                    std::to_string(hyp_lines.size()) + " hypothesis lines");
  }
  AccuracyReport report;
  for (std::size_t i = 0; i < ref_lines.size(); ++i) {
    report.Add(ScoreSentence(SplitWhitespace(ref_lines[i]), SplitWhitespace(hyp_lines[i])));
  }
  return report;
}

double Ratio::value() const {
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::string Ratio::ToString() const {
  std::ostringstream os;
  os.precision(2);
  os << numerator << "/" << denominator << " = " << std::fixed << value();
  return os.str();
}

Ratio Diversity(std::uint64_t written_entities, std::uint64_t spoken_forms) {
  if (written_entities == 0) throw Error(ErrorCode::kZeroWrittenEntities, "no written entities");
  std::uint64_t g = std::gcd(written_entities, spoken_forms);
  if (g == 0) g = 1;
  return {spoken_forms / g, written_entities / g};
}

std::vector<std::string> TopNgrams(const std::vector<std::string>& corpus, std::size_t n,
                                   std::size_t top_k, const std::set<std::string>& stopwords) {
  if (n == 0) throw std::invalid_argument("n-gram order must be positive");
  std::map<std::string, std::size_t> counts;
  for (const auto& line : corpus) {
    auto tokens = SplitWhitespace(line);
    for (auto& t : tokens) {
      for (char& c : t) {
        if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
      }
    }
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      bool skip = false;
      std::string gram;
      for (std::size_t k = i; k < i + n && !skip; ++k) {
        skip = stopwords.count(tokens[k]) != 0;
        if (k > i) gram += ' ';
        gram += tokens[k];
      }
      if (!skip) ++counts[gram];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < top_k; ++i) out.push_back(ranked[i].first);
  return out;
}

double NgramOverlap(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    std::size_t n, std::size_t top_k, const std::set<std::string>& stopwords,
                    bool jaccard) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptyCorpus, "n-gram overlap of an empty corpus");
  auto ta = TopNgrams(a, n, top_k, stopwords);
  auto tb = TopNgrams(b, n, top_k, stopwords);
  std::set<std::string> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
  std::size_t shared = 0;
  for (const auto& g : sa) shared += sb.count(g);
  std::size_t denom = jaccard ? sa.size() + sb.size() - shared
                              : (sa.size() >= top_k && sb.size() >= top_k
                                     ? top_k
                                     : std::min(sa.size(), sb.size()));
  if (denom == 0) return 0.0;
  return 100.0 * static_cast<double>(shared) / static_cast<double>(denom);
}

std::set<std::string> ParseStopwords(std::string_view text) {
  std::set<std::string> out;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    for (auto& w : SplitWhitespace(line.substr(0, line.find('#')))) out.insert(std::move(w));
  }
  return out;
}

const std::set<std::string>& DefaultStopwords() {
  static const std::set<std::string> words = ParseStopwords(embedded::stopwords());
  return words;
}

}  // namespace itn
