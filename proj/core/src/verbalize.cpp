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

#include "itn/verbalize.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "itn/error.hpp"
#include "itn/log.hpp"
#include "itn/pair_io.hpp"

namespace itn {
namespace {

constexpr std::size_t kMaxDepth = 64;

class Expander {
 public:
  Expander(const Grammar& grammar, std::size_t cap) : grammar_(grammar), cap_(cap) {}

  std::vector<SpokenForm> ExpandGroup(const std::string& group, const std::string& text) {
    auto key = std::make_pair(group, text);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<SpokenForm> out;
    std::unordered_set<std::string> seen;
    for (std::size_t idx : grammar_.Group(group)) {
      if (out.size() >= cap_) break;
      const RewriteRule& rule = grammar_.rules()[idx];
      std::smatch m;
      if (!std::regex_match(text, m, rule.regex)) continue;
      Enter(idx, text);
      for (std::size_t a = 0; a < rule.alternatives.size() && out.size() < cap_; ++a) {
        ExpandAlternative(idx, a, m, out, seen);
      }
      stack_.pop_back();
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  void Enter(std::size_t rule, const std::string& text) {
    for (const auto& [r, t] : stack_) {
      if (r == rule && t == text) {
        throw Error(ErrorCode::kGrammarCycle, "rule " + grammar_.rules()[rule].id +
                                                  " re-entered on '" + text + "'");
      }
    }
    if (stack_.size() >= kMaxDepth) {
      throw Error(ErrorCode::kGrammarCycle, "expansion deeper than " + std::to_string(kMaxDepth));
    }
    stack_.emplace_back(rule, text);
  }

  void ExpandAlternative(std::size_t rule_idx, std::size_t alt, const std::smatch& m,
                         std::vector<SpokenForm>& out, std::unordered_set<std::string>& seen) {
    const Template& tpl = grammar_.rules()[rule_idx].alternatives[alt];
    std::vector<std::vector<SpokenForm>> options;
    options.reserve(tpl.size());
    for (std::size_t pos = 0; pos < tpl.size(); ++pos) {
      const TemplateElement& el = tpl[pos];
      TokenOrigin origin{rule_idx, alt, pos};
      switch (el.type) {
        case TemplateElement::Type::kWord:
          options.push_back({SpokenForm{{el.word}, {origin}}});
          break;
        case TemplateElement::Type::kCapture: {
          SpokenForm f;
          for (auto& tok : SplitWhitespace(m[el.capture].str())) {
            f.tokens.push_back(std::move(tok));
            f.origins.push_back(origin);
          }
          if (f.tokens.empty()) return;
          options.push_back({std::move(f)});
          break;
        }
        case TemplateElement::Type::kInvoke: {
          auto sub = ExpandGroup(el.group, m[el.capture].str());
          if (sub.empty()) return;
          options.push_back(std::move(sub));
          break;
        }
      }
    }
    // Odometer over the options, first element varying slowest.
    std::vector<std::size_t> digit(options.size(), 0);
    while (out.size() < cap_) {
      SpokenForm f;
      for (std::size_t i = 0; i < options.size(); ++i) {
        const SpokenForm& part = options[i][digit[i]];
        f.tokens.insert(f.tokens.end(), part.tokens.begin(), part.tokens.end());
        f.origins.insert(f.origins.end(), part.origins.begin(), part.origins.end());
      }
      if (seen.insert(JoinTokens(f.tokens)).second) out.push_back(std::move(f));
      std::size_t i = options.size();
      while (i > 0) {
        --i;
        if (++digit[i] < options[i].size()) break;
        digit[i] = 0;
        if (i == 0) return;
      }
      if (options.empty()) return;
    }
  }

  const Grammar& grammar_;
  std::size_t cap_;
  std::map<std::pair<std::string, std::string>, std::vector<SpokenForm>> memo_;
  std::vector<std::pair<std::size_t, std::string>> stack_;
};

bool IsStripPunct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

}  // namespace

void AugmentConfig::Validate() const {
  if (n_variants_per_sentence == 0) {
    throw std::invalid_argument("n_variants_per_sentence must be positive");
  }
  if (max_expansions_per_entity == 0) {
    throw std::invalid_argument("max_expansions_per_entity must be positive");
  }
}

VariantSet ExpandEntity(const WrittenEntity& entity, const Grammar& grammar,
                        std::size_t max_expansions) {
  if (max_expansions == 0) throw std::invalid_argument("max_expansions must be positive");
  Expander expander(grammar, max_expansions);
  VariantSet set;
  set.entity = entity;
  set.spoken_forms =
      expander.ExpandGroup(std::string(EntityGrammarGroup(entity.kind)), entity.canonical);
  if (set.spoken_forms.empty()) {
    throw Error(ErrorCode::kNoRuleMatch, std::string(EntityKindName(entity.kind)) + " '" +
                                             entity.canonical + "'");
  }
  return set;
}

std::vector<std::string> SpokenizeText(std::string_view text) {
  std::vector<std::string> out;
  for (auto& tok : SplitWhitespace(text)) {
    std::size_t b = 0, e = tok.size();
    while (b < e && IsStripPunct(tok[b])) ++b;
    while (e > b && IsStripPunct(tok[e - 1])) --e;
    if (b == e) continue;
    std::string word = tok.substr(b, e - b);
    for (char& c : word) {
      if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
    }
    out.push_back(std::move(word));
  }
  return out;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::Next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::Below(std::uint64_t bound) {
  if (bound == 0) return 0;
  // Lemire's multiply-shift with rejection.
  __extension__ using u128 = unsigned __int128;
  u128 m = static_cast<u128>(Next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<u128>(Next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

namespace {

std::vector<SpokenWrittenPair> AugmentImpl(std::string_view sentence, const AugmentConfig& config,
                                           const Grammar& grammar, const PatternSet& patterns,
                                           std::uint64_t line_index,
                                           std::vector<VariantSet>* variants_out) {
  config.Validate();
  auto b = sentence.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  sentence = sentence.substr(b, sentence.find_last_not_of(" \t\r\n") - b + 1);

  std::vector<VariantSet> variants;
  for (auto& e : ExtractEntities(sentence, patterns)) {
    variants.push_back(ExpandEntity(Canonicalize(std::move(e)), grammar,
                                    config.max_expansions_per_entity));
  }

  // Non-entity gaps and the written text shared by every output pair.
  std::vector<std::vector<std::string>> gap_tokens;
  std::vector<ByteSpan> written_spans;
  std::string written;
  std::size_t cursor = 0;
  for (const auto& v : variants) {
    std::string_view gap = sentence.substr(cursor, v.entity.span.begin - cursor);
    gap_tokens.push_back(SpokenizeText(gap));
    written += gap;
    written_spans.push_back({written.size(), written.size() + v.entity.written.size()});
    written += v.entity.written;
    cursor = v.entity.span.end;
  }
  gap_tokens.push_back(SpokenizeText(sentence.substr(cursor)));
  written += sentence.substr(cursor);

  // Choose variant combinations.
  constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;
  std::uint64_t product = 1;
  for (const auto& v : variants) {
    product = product > kSaturated / v.spoken_forms.size() ? kSaturated
                                                           : product * v.spoken_forms.size();
  }
  std::vector<std::vector<std::size_t>> combos;
  auto decode = [&](std::uint64_t index) {
    std::vector<std::size_t> c(variants.size());
    for (std::size_t i = variants.size(); i-- > 0;) {
      c[i] = index % variants[i].spoken_forms.size();
      index /= variants[i].spoken_forms.size();
    }
    return c;
  };
  const std::uint64_t n = config.n_variants_per_sentence;
  if (product <= n) {
    for (std::uint64_t i = 0; i < product; ++i) combos.push_back(decode(i));
  } else {
    Rng rng(SplitMix64(config.seed) ^ SplitMix64(line_index + 0x51ed270b27aULL));
    if (product < kSaturated) {
      // Floyd's algorithm: n distinct indices from [0, product).
      std::set<std::uint64_t> chosen;
      for (std::uint64_t j = product - n; j < product; ++j) {
        std::uint64_t t = rng.Below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
      }
      for (auto idx : chosen) combos.push_back(decode(idx));
    } else {
      std::set<std::vector<std::size_t>> chosen;
      while (chosen.size() < n) {
        std::vector<std::size_t> c(variants.size());
        for (std::size_t i = 0; i < variants.size(); ++i) {
          c[i] = rng.Below(variants[i].spoken_forms.size());
        }
        chosen.insert(std::move(c));
      }
      combos.assign(chosen.begin(), chosen.end());
    }
  }

  std::vector<SpokenWrittenPair> pairs;
  pairs.reserve(combos.size());
  for (const auto& combo : combos) {
    SpokenWrittenPair p;
    p.written = written;
    p.trace.emplace();
    for (std::size_t i = 0; i <= variants.size(); ++i) {
      p.spoken.insert(p.spoken.end(), gap_tokens[i].begin(), gap_tokens[i].end());
      if (i == variants.size()) break;
      const SpokenForm& form = variants[i].spoken_forms[combo[i]];
      for (std::size_t t = 0; t < form.tokens.size(); ++t) {
        const TokenOrigin& o = form.origins[t];
        p.trace->push_back({p.spoken.size(), grammar.rules()[o.rule].id, o.alternative,
                            o.position, variants[i].entity.kind, written_spans[i]});
        p.spoken.push_back(form.tokens[t]);
      }
    }
    pairs.push_back(std::move(p));
  }
  if (variants_out != nullptr) *variants_out = std::move(variants);
  return pairs;
}

}  // namespace

std::vector<SpokenWrittenPair> AugmentSentence(std::string_view sentence, const AugmentConfig& config,
                                               const Grammar& grammar, const PatternSet& patterns,
                                               std::uint64_t line_index) {
  return AugmentImpl(sentence, config, grammar, patterns, line_index, nullptr);
}

std::string AugmentStats::ToJson() const {
  std::ostringstream os;
  os << "{\"lines\": " << lines << ", \"pairs\": " << pairs << ", \"skipped_lines\": "
     << skipped_lines << ", \"written_entities\": " << written_entities
     << ", \"spoken_forms\": " << spoken_forms << ", \"entity_counts\": {";
  for (std::size_t k = 0; k < kNumEntityKinds; ++k) {
    if (k > 0) os << ", ";
    os << '"' << EntityKindName(static_cast<EntityKind>(k)) << "\": " << entity_counts[k];
  }
  os << "}}";
  return os.str();
}

namespace {

struct LineResult {
  std::vector<std::string> records;
  std::size_t written_entities = 0;
  std::size_t spoken_forms = 0;
  std::array<std::size_t, kNumEntityKinds> kinds{};
  std::string error;
};

LineResult ProcessLine(const std::string& line, std::uint64_t index, const AugmentConfig& config,
                       const Grammar& grammar, const PatternSet& patterns) {
  LineResult r;
  try {
    std::vector<VariantSet> variants;
    auto pairs = AugmentImpl(line, config, grammar, patterns, index, &variants);
    for (const auto& v : variants) {
      ++r.written_entities;
      ++r.kinds[static_cast<std::size_t>(v.entity.kind)];
      r.spoken_forms += v.spoken_forms.size();
    }
    for (auto& p : pairs) {
      if (!config.keep_trace) p.trace.reset();
      r.records.push_back(PairToJsonLine(p));
    }
  } catch (const Error& e) {
    r = LineResult{};
    r.error = e.what();
  }
  return r;
}

}  // namespace

AugmentStats AugmentCorpus(std::istream& in, std::ostream& out, const AugmentConfig& config,
                           const Grammar& grammar, const PatternSet& patterns,
                           std::size_t threads) {
  config.Validate();
  threads = std::max<std::size_t>(threads, 1);
  constexpr std::size_t kBlock = 256;
  AugmentStats stats;
  std::vector<std::string> block;
  std::vector<LineResult> results;
  std::uint64_t next_index = 0;

  auto flush = [&]() {
    results.assign(block.size(), LineResult{});
    auto work = [&](std::size_t worker) {
      for (std::size_t i = worker; i < block.size(); i += threads) {
        if (block[i].empty()) continue;
        results[i] = ProcessLine(block[i], next_index + i, config, grammar, patterns);
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (block[i].empty()) continue;
      const LineResult& r = results[i];
      ++stats.lines;
      if (!r.error.empty()) {
        ++stats.skipped_lines;
        ITN_LOG(kWarning) << "line " << (next_index + i + 1) << ": skipped: " << r.error;
        continue;
      }
      for (const auto& rec : r.records) out << rec << '\n';
      stats.pairs += r.records.size();
      stats.written_entities += r.written_entities;
      stats.spoken_forms += r.spoken_forms;
      for (std::size_t k = 0; k < kNumEntityKinds; ++k) stats.entity_counts[k] += r.kinds[k];
    }
    next_index += block.size();
    block.clear();
  };

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      // Blank lines are dropped but still consume a line index so that
      // sampling stays aligned with input line numbers.
      if (block.empty()) ++next_index;
      else block.push_back(std::string());
      continue;
    }
    block.push_back(line);
    if (block.size() >= kBlock) flush();
  }
  if (!block.empty()) flush();
  return stats;
}

std::vector<std::string> ReplayTrace(const SpokenWrittenPair& pair, const Grammar& grammar) {
  if (!pair.trace) throw Error(ErrorCode::kTraceIncomplete, "pair has no trace");
  std::vector<std::string> tokens = pair.spoken;
  for (const auto& entry : *pair.trace) {
    const RewriteRule* rule = grammar.Find(entry.rule);
    if (rule == nullptr || entry.alternative >= rule->alternatives.size() ||
        entry.position >= rule->alternatives[entry.alternative].size() ||
        entry.token_index >= tokens.size()) {
      throw Error(ErrorCode::kTraceIncomplete, "dangling trace entry for rule " + entry.rule);
    }
    const TemplateElement& el = rule->alternatives[entry.alternative][entry.position];
    if (el.type == TemplateElement::Type::kWord) {
      tokens[entry.token_index] = el.word;
    } else if (el.type == TemplateElement::Type::kInvoke) {
      throw Error(ErrorCode::kTraceIncomplete, "trace entry points at an invocation");
    }
  }
  return tokens;
}

}  // namespace itn
