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
#include <map>
#include <unordered_set>

#include "itn/error.hpp"
#include "itn/labels.hpp"
#include "render.hpp"

namespace itn {
namespace {

constexpr std::ptrdiff_t kNoEntity = -1;

class LabelSearch {
 public:
  LabelSearch(const std::vector<std::string>& tokens, std::string_view written,
              const RewriteLexicon& lexicon, const SearchOptions& options)
      : tokens_(tokens), written_(written), lexicon_(lexicon), options_(options),
        rows_(tokens.size()), entity_(tokens.size(), kNoEntity) {
    for (const auto& word : lexicon.Words()) {
      if (!lexicon.Contains(word, Rewrite::kCurrencySymbol)) continue;
      const std::string& sym = lexicon.Lookup(word, Rewrite::kCurrencySymbol);
      if (std::find(symbols_.begin(), symbols_.end(), sym) == symbols_.end()) {
        symbols_.push_back(sym);
      }
    }
  }

  // Restricts the search to trace-derived entity spans: tokens outside every
  // span keep identity rows, regions stay inside one span.
  void SetEntities(std::vector<std::ptrdiff_t> entity_of_token) {
    entity_ = std::move(entity_of_token);
    constrained_ = true;
  }

  std::optional<std::vector<LabelRow>> Run() {
    if (Dfs(0, 0)) return rows_;
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }

 private:
  bool Dfs(std::size_t i, std::size_t clean_length) {
    if (i == tokens_.size()) {
      try {
        auto r = detail::Render(tokens_, rows_, i, lexicon_, false);
        return r.chunks.front() == written_;
      } catch (const Error&) {
        return false;
      }
    }
    std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | clean_length;
    bool clean = clean_length != kDirty;
    if (clean && failed_.count(key) != 0) return false;
    for (const LabelRow& row : Candidates(i)) {
      if (++nodes_ > options_.node_budget) {
        exhausted_ = true;
        return false;
      }
      rows_[i] = row;
      detail::Rendered r;
      try {
        r = detail::Render(tokens_, rows_, i + 1, lexicon_, true);
      } catch (const Error&) {
        continue;
      }
      if (!Matches(r.chunks, 0, 0)) continue;
      if (constrained_ && !RegionsCloseInEntity(i)) continue;
      std::size_t next = r.clean ? r.chunks.front().size() : kDirty;
      if (Dfs(i + 1, next)) return true;
      if (exhausted_) return false;
    }
    rows_[i] = LabelRow{};
    if (clean) failed_.insert(key);
    return false;
  }

  // Whether chunk `idx` onward matches written_ from `pos` as a prefix,
  // with any currency symbol between chunks.
  bool Matches(const std::vector<std::string>& chunks, std::size_t idx, std::size_t pos) const {
    const std::string& c = chunks[idx];
    if (pos + c.size() > written_.size() || written_.compare(pos, c.size(), c) != 0) return false;
    pos += c.size();
    if (idx + 1 == chunks.size()) return true;
    for (const auto& sym : symbols_) {
      if (written_.compare(pos, sym.size(), sym) == 0 && Matches(chunks, idx + 1, pos + sym.size())) {
        return true;
      }
    }
    return false;
  }

  bool RegionsCloseInEntity(std::size_t i) const {
    std::ptrdiff_t e = entity_[i];
    bool entity_ends = i + 1 == tokens_.size() || entity_[i + 1] != e;
    if (!entity_ends) return true;
    for (const auto& r : detail::CollectRegions(rows_, i + 1, true)) {
      if (r.open) return false;
    }
    return true;
  }

  // Whether some token in [from, end of the allowed span) could close a
  // region of type t.
  bool Closable(std::size_t from, Post t) const {
    for (std::size_t j = from; j < tokens_.size(); ++j) {
      if (constrained_ && entity_[j] != entity_[from]) break;
      for (Rewrite c : lexicon_.ClassesOf(tokens_[j])) {
        if (EndFits(t, tokens_[j], c)) return true;
      }
    }
    return false;
  }

  bool EndFits(Post t, const std::string& word, Rewrite c) const {
    switch (t) {
      case Post::kMajorCurrency:
        return c == Rewrite::kCurrencySymbol &&
               written_.find(lexicon_.Lookup(word, c)) != std::string_view::npos;
      case Post::kMinorCurrency:
        return c == Rewrite::kCurrencySymbol && detail::IsMinorSymbol(lexicon_.Lookup(word, c)) &&
               written_.find('.') != std::string_view::npos;
      case Post::kMeasure:
        return c == Rewrite::kMeasure;
      case Post::kMagnitude:
        return IsMagnitude(c);
      case Post::kNone:
        return false;
    }
    return false;
  }

  std::vector<LabelRow> Candidates(std::size_t i) const {
    if (constrained_ && entity_[i] == kNoEntity) return {LabelRow::Identity()};
    const std::string& word = tokens_[i];

    std::vector<bool> open(kNumPost, false);
    std::vector<std::size_t> open_at(kNumPost, 0);
    for (const auto& r : detail::CollectRegions(rows_, i, true)) {
      if (r.open) {
        open[static_cast<std::size_t>(r.type)] = true;
        open_at[static_cast<std::size_t>(r.type)] = r.begin;
      }
    }

    std::vector<Rewrite> rewrites = {Rewrite::kNone};
    for (Rewrite c : lexicon_.ClassesOf(word)) rewrites.push_back(c);

    std::vector<LabelRow> out;
    for (Rewrite rw : rewrites) {
      std::vector<Prepend> prepends = {Prepend::kNone};
      if (rw != Rewrite::kNone) {
        for (std::size_t p = 1; p < kNumPrepend; ++p) {
          auto pv = static_cast<Prepend>(p);
          if (written_.find(PrependText(pv)) != std::string_view::npos) prepends.push_back(pv);
        }
      }
      std::vector<Space> spaces = {Space::kOn, Space::kOff};
      if (rw == Rewrite::kCurrencySymbol) std::swap(spaces[0], spaces[1]);

      std::vector<Post> starts = {Post::kNone};
      if (rw != Rewrite::kNone) {
        for (std::size_t t = 1; t < kNumPost; ++t) {
          auto pt = static_cast<Post>(t);
          if (!open[t] && Closable(i + 1, pt)) starts.push_back(pt);
        }
      }
      std::vector<Post> ends;
      for (std::size_t t = 1; t < kNumPost; ++t) {
        auto pt = static_cast<Post>(t);
        if (!open[t] || !EndFits(pt, word, rw)) continue;
        if (constrained_ && entity_[open_at[t]] != entity_[i]) continue;
        ends.push_back(pt);
      }
      ends.push_back(Post::kNone);

      for (Prepend p : prepends) {
        for (Space s : spaces) {
          for (Post ps : starts) {
            for (Post pe : ends) out.push_back({rw, p, s, ps, pe});
          }
        }
      }
    }
    return out;
  }

  static constexpr std::size_t kDirty = ~std::size_t{0} >> 32;

  const std::vector<std::string>& tokens_;
  std::string_view written_;
  const RewriteLexicon& lexicon_;
  SearchOptions options_;
  std::vector<LabelRow> rows_;
  std::vector<std::ptrdiff_t> entity_;
  bool constrained_ = false;
  std::vector<std::string> symbols_;
  std::unordered_set<std::uint64_t> failed_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

std::optional<std::vector<LabelRow>> InferLabelsSearch(const std::vector<std::string>& spoken,
                                                       std::string_view written,
                                                       const RewriteLexicon& lexicon,
                                                       const SearchOptions& options) {
  LabelSearch search(spoken, written, lexicon, options);
  return search.Run();
}

std::vector<LabelRow> InferLabelsFromTrace(const SpokenWrittenPair& pair,
                                           const RewriteLexicon& lexicon,
                                           const SearchOptions& options) {
  if (!pair.trace) throw Error(ErrorCode::kTraceIncomplete, "pair has no trace");
  const std::size_t n = pair.spoken.size();
  std::vector<std::ptrdiff_t> entity(n, kNoEntity);
  std::map<std::pair<std::size_t, std::size_t>, std::ptrdiff_t> ids;
  std::vector<std::pair<std::size_t, std::size_t>> extent;  // token range per entity
  for (const auto& e : *pair.trace) {
    if (e.token_index >= n) {
      throw Error(ErrorCode::kTraceIncomplete,
                  "trace entry for token " + std::to_string(e.token_index) + " of " +
                      std::to_string(n));
    }
    auto key = std::make_pair(e.entity_span.begin, e.entity_span.end);
    auto [it, fresh] = ids.emplace(key, static_cast<std::ptrdiff_t>(extent.size()));
    if (fresh) extent.emplace_back(e.token_index, e.token_index);
    auto& range = extent[static_cast<std::size_t>(it->second)];
    range.first = std::min(range.first, e.token_index);
    range.second = std::max(range.second, e.token_index);
    entity[e.token_index] = it->second;
  }
  for (std::size_t id = 0; id < extent.size(); ++id) {
    for (std::size_t t = extent[id].first; t <= extent[id].second; ++t) {
      if (entity[t] != static_cast<std::ptrdiff_t>(id)) {
        throw Error(ErrorCode::kTraceIncomplete,
                    "token " + std::to_string(t) + " inside an entity has no provenance");
      }
    }
  }
  LabelSearch search(pair.spoken, pair.written, lexicon, options);
  search.SetEntities(std::move(entity));
  auto rows = search.Run();
  if (!rows) {
    throw Error(ErrorCode::kNoDerivation, std::string(search.exhausted() ? "search budget spent"
                                                                         : "no label rows") +
                                              " for '" + pair.written + "'");
  }
  return *rows;
}

}  // namespace itn
