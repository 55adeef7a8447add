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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "itn/error.hpp"
#include "itn/eval.hpp"
#include "itn/extract.hpp"
#include "itn/grammar.hpp"
#include "itn/labels.hpp"
#include "itn/lexicon.hpp"
#include "itn/tagger.hpp"
#include "itn/tokenize.hpp"
#include "itn/verbalize.hpp"
#include "itn_cli/experiment.hpp"
#include "itn_cli/synth.hpp"
#include "oracles.hpp"

namespace {

using namespace itn;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const Grammar& G() { return Grammar::Default(); }
const RewriteLexicon& L() { return RewriteLexicon::Default(); }
const PatternSet& P() { return PatternSet::Default(); }

std::string Fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::set<std::string> Expand(const std::string& text) {
  auto entities = ExtractEntities(text, P());
  if (entities.size() != 1) return {};
  std::set<std::string> out;
  for (const auto& form : ExpandEntity(Canonicalize(entities[0]), G()).spoken_forms) {
    out.insert(JoinTokens(form.tokens));
  }
  return out;
}

Outcome ExpansionGolden() {
  const std::set<std::string> plain = {"one hundred twenty three", "one twenty three",
                                       "one hundred and twenty three", "one two three"};
  auto with = [&](const std::string& unit) {
    std::set<std::string> out;
    for (const auto& p : plain) {
      out.insert(p + " " + unit);
      out.insert(p + " " + unit + "s");
    }
    return out;
  };
  auto a = Expand("123"), b = Expand("$123"), c = Expand("123g");
  bool ok = a == plain && b == with("dollar") && c == with("gram");
  return {ok, std::to_string(a.size()) + "/" + std::to_string(b.size()) + "/" +
                  std::to_string(c.size()) + " variants"};
}

Outcome DollarRows() {
  const std::vector<std::string> spoken = {"i", "have", "one", "twenty", "dollar"};
  LabelRow cardinal_open{Rewrite::kCardinal, Prepend::kNone, Space::kOn, Post::kMajorCurrency,
                         Post::kNone};
  LabelRow cardinal_joined{Rewrite::kCardinal, Prepend::kNone, Space::kOff, Post::kNone,
                           Post::kNone};
  LabelRow symbol_close{Rewrite::kCurrencySymbol, Prepend::kNone, Space::kOff, Post::kNone,
                        Post::kMajorCurrency};
  const std::vector<LabelRow> table = {LabelRow{}, LabelRow{}, cardinal_open, cardinal_joined,
                                       symbol_close};
  std::string applied = ApplyLabels(spoken, table, L());
  auto searched = InferLabelsSearch(spoken, "i have $120", L());
  bool replay = searched && ApplyLabels(spoken, *searched, L()) == "i have $120";
  bool same_rows = searched && *searched == table;
  return {applied == "i have $120" && replay,
          "apply -> \"" + applied + "\"; search " + (replay ? "replays" : "fails") +
              (same_rows ? ", rows equal the reference rows" : "")};
}

Outcome RoundTrip() {
  auto corpus = cli::SynthCorpus(cli::Domain::kSource, 3000, 17);
  AugmentConfig config;
  std::size_t total = 0, ok = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& pair : AugmentSentence(corpus[i], config, G(), P(), i)) {
      ++total;
      try {
        if (ApplyLabels(pair.spoken, InferLabelsFromTrace(pair, L()), L()) == pair.written) ++ok;
      } catch (const Error&) {
      }
    }
  }
  return {total >= 10000 && ok == total,
          std::to_string(ok) + "/" + std::to_string(total) + " pairs reproduced"};
}

Outcome DiversityCheck() {
  std::size_t forms = 0;
  for (const char* s : {"123", "$123", "123g"}) forms += Expand(s).size();
  Ratio micro = Diversity(3, forms);
  bool micro_ok = micro.numerator == 20 && micro.denominator == 3 &&
                  Fmt("%.2f", micro.value()) == "6.67";

  auto corpus = cli::SynthCorpus(cli::Domain::kSource, 2000, 17);
  std::string text;
  for (const auto& line : corpus) text += line + '\n';
  std::istringstream in(text);
  std::ostringstream sink;
  AugmentStats stats = AugmentCorpus(in, sink, AugmentConfig{}, G(), P());
  Ratio synth = Diversity(stats.written_entities, stats.spoken_forms);
  return {micro_ok && synth.value() > 3.0,
          "micro " + micro.ToString() + "; synthetic source " + Fmt("%.2f", synth.value())};
}

Outcome DomainShift() {
  cli::Resources res{G(), L(), P()};
  double margin[4] = {0, 0, 0, 0};
  double worst_overlap = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    cli::ExperimentConfig config;
    config.seed = seed;
    auto r = cli::RunDomainShift(config, res);
    const AccuracyReport& a = r.pretrain_finetune.report;
    const AccuracyReport& b = r.finetune_only.report;
    const KindScore* pa[4] = {&a.overall, &a.cardinal, &a.currency, &a.fraction};
    const KindScore* pb[4] = {&b.overall, &b.cardinal, &b.currency, &b.fraction};
    for (int k = 0; k < 4; ++k) {
      margin[k] += (pa[k]->accuracy().value_or(0) - pb[k]->accuracy().value_or(0)) / 3.0;
    }
    worst_overlap = std::max(worst_overlap, r.unigram_overlap);
  }
  bool ok = worst_overlap < 40.0;
  for (double m : margin) ok = ok && m > 0;
  return {ok, "mean margins overall " + Fmt("%+.3f", margin[0]) + " cardinal " +
                  Fmt("%+.3f", margin[1]) + " currency " + Fmt("%+.3f", margin[2]) +
                  " fraction " + Fmt("%+.3f", margin[3]) + "; max unigram overlap " +
                  Fmt("%.1f%%", worst_overlap)};
}

Outcome GradientCheck() {
  Rng rng(2026);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    TaggerConfig c;
    c.vocab_size = PieceVocab::kBaseSize + 3;
    c.embed_dim = 2 + rng.Below(3);
    c.hidden_dim = 2 * (1 + rng.Below(3));
    c.layers = 1 + rng.Below(2);
    c.head_hidden = 2 + rng.Below(3);
    for (double& w : c.task_weights) w = 0.5 + rng.Uniform();
    TaggerModel<double> model(c);
    model.InitRandom(1000 + trial);
    std::vector<PieceExample> data(2);
    for (auto& ex : data) {
      std::size_t len = 1 + rng.Below(4);
      for (std::size_t t = 0; t < len; ++t) {
        ex.ids.push_back(static_cast<int>(rng.Below(c.vocab_size)));
        std::array<int, 5> cls{};
        for (int k = 0; k < 5; ++k) cls[k] = static_cast<int>(rng.Below(kTaskSizes[k]));
        ex.rows.push_back(LabelRow::FromClasses(cls));
      }
    }
    std::vector<const PieceExample*> batch = {&data[0], &data[1]};
    model.ZeroGrad();
    model.Loss(batch, true);
    // Differences are taken in extended precision so that round-off in the
    // oracle stays well below the tolerance even for near-zero gradients.
    auto fine = model.Cast<long double>();
    for (std::size_t k = 0; k < model.params().size(); ++k) {
      auto& p = model.params()[k];
      auto& q = fine.params()[k];
      for (Eigen::Index i = 0; i < p.value.size(); ++i) {
        const long double x = q.value(i), h = 1e-3L;
        auto f = [&](long double v) {
          q.value(i) = v;
          return fine.Loss(batch, false);
        };
        double numeric = static_cast<double>(
            (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h));
        q.value(i) = x;
        double analytic = p.grad(i);
        double rel = std::abs(numeric - analytic) /
                     std::max({std::abs(numeric), std::abs(analytic), 1e-8});
        worst = std::max(worst, rel);
      }
    }
  }
  return {worst < 1e-4, "worst relative error " + Fmt("%.2e", worst) + " over 20 configurations"};
}

Outcome Memorization() {
  cli::Resources res{G(), L(), P()};
  auto sentences = cli::SynthCorpus(cli::Domain::kTarget, 32, 7);
  AugmentConfig aug;
  aug.n_variants_per_sentence = 1;
  auto data = cli::AugmentAndLabel(sentences, aug, res);
  std::vector<std::string> corpus;
  for (const auto& p : data.pairs) corpus.push_back(JoinTokens(p.spoken));
  PieceVocab vocab = PieceVocab::Build(corpus, ProtectedWords(G(), L()), 600);
  auto examples = cli::ToExamples(vocab, data);
  TaggerConfig c;
  c.vocab_size = vocab.size();
  c.learning_rate = 3e-3;
  c.batch_size = 8;
  TaggerModel<float> model(c);
  model.InitRandom(11);
  auto result = FitEpochs(model, examples, 200, 11);
  double acc = PieceAccuracy(model, examples);
  return {examples.size() == 32 && acc == 1.0,
          std::to_string(examples.size()) + " pairs, accuracy " + Fmt("%.4f", acc) + " after " +
              std::to_string(result.log.size()) + " epochs"};
}

Outcome TokenizerProtection() {
  cli::Resources res{G(), L(), P()};
  std::vector<std::string> corpus;
  for (auto domain : {cli::Domain::kSource, cli::Domain::kTarget, cli::Domain::kGeneral}) {
    for (const auto& words : cli::SpeakSentences(cli::SynthCorpus(domain, 1000, 3), res, 3)) {
      corpus.push_back(JoinTokens(words));
    }
  }
  PieceVocab vocab = PieceVocab::Build(corpus, ProtectedWords(G(), L()), 4096);
  std::size_t words = 0, single = 0;
  for (const auto& w : G().SpokenVocabulary()) {
    ++words;
    single += vocab.Encode(w).size() == 1 ? 1 : 0;
  }
  bool ninety = vocab.Encode("ninety").size() == 1;

  Rng rng(99);
  const std::vector<std::string> alphabet = {"a", "e", "n", "t", "y", "0", "7", "$", "/", ".",
                                             "-", "\xC3\xA9", "\xE2\x82\xAC", "\xE4\xB8\xAD",
                                             "\xF0\x9F\x98\x80", "ninety", "hundred"};
  std::size_t fuzz_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    std::size_t n_words = 1 + rng.Below(6);
    for (std::size_t w = 0; w < n_words; ++w) {
      if (w) s += ' ';
      std::size_t len = 1 + rng.Below(8);
      for (std::size_t k = 0; k < len; ++k) {
        const std::string& piece = alphabet[rng.Below(alphabet.size())];
        s += piece;
      }
    }
    fuzz_ok += vocab.Decode(vocab.Encode(s)) == s ? 1 : 0;
  }
  return {single == words && ninety && fuzz_ok == 1000,
          std::to_string(single) + "/" + std::to_string(words) +
              " grammar words encode to one piece; fuzz round-trip " + std::to_string(fuzz_ok) +
              "/1000"};
}

Outcome ModelBudget() {
  // Protected words plus filler pieces up to a 4096-piece vocabulary.
  PieceVocab base = PieceVocab::Build({"a"}, ProtectedWords(G(), L()), 512);
  std::vector<std::string> pieces;
  std::vector<bool> is_protected;
  for (std::size_t i = 0; i < base.size(); ++i) {
    pieces.push_back(base.Piece(static_cast<int>(i)));
    is_protected.push_back(base.IsProtected(static_cast<int>(i)));
  }
  for (std::size_t i = 0; pieces.size() < 4096; ++i) {
    pieces.push_back("filler" + std::to_string(i));
    is_protected.push_back(false);
  }
  PieceVocab vocab = PieceVocab::FromPieces(pieces, is_protected);
  TaggerConfig c;
  c.vocab_size = vocab.size();
  TaggerModel<float> model(c);
  model.InitRandom(1);
  std::ostringstream out;
  SaveModel(out, model, vocab);
  const std::size_t bytes = out.str().size();
  const std::size_t limit = 2u * 1024u * 1024u;
  return {vocab.size() == 4096 && bytes < limit,
          std::to_string(bytes) + " bytes for " + std::to_string(c.ParameterCount()) +
              " parameters (limit " + std::to_string(limit) + ")"};
}

Outcome MetricOracles() {
  Rng rng(4242);
  // Accuracy on randomized corrupted corpora.
  const std::vector<std::string> pool = {"pay",  "the",   "bill", "add",   "cup",    "42",
                                         "7",    "1250",  "3/4",  "1/2",   "$120",   "$5.50",
                                         "£30",  "€9.99", "to",   "hello", "guests", "10/3"};
  auto corrupt = [&](const std::string& tok) -> std::string {
    switch (rng.Below(4)) {
      case 0: return tok + "0";
      case 1: return tok.size() > 1 ? tok.substr(1) : "x";
      case 2: return pool[rng.Below(pool.size())];
      default: return tok + "$";
    }
  };
  bool accuracy_ok = true;
  for (int c = 0; c < 100; ++c) {
    std::vector<std::string> refs, hyps;
    for (int s = 0; s < 8; ++s) {
      std::vector<std::string> ref, hyp;
      std::size_t len = 1 + rng.Below(7);
      for (std::size_t t = 0; t < len; ++t) ref.push_back(pool[rng.Below(pool.size())]);
      for (const auto& tok : ref) {
        double u = rng.Uniform();
        if (u < 0.6) {
          hyp.push_back(tok);
        } else if (u < 0.8) {
          hyp.push_back(corrupt(tok));
        } else if (u < 0.9) {
          continue;  // deletion
        } else {
          hyp.push_back(tok);
          hyp.push_back(pool[rng.Below(pool.size())]);
        }
      }
      refs.push_back(JoinTokens(ref));
      hyps.push_back(JoinTokens(hyp));
    }
    AccuracyReport r = ScoreCorpus(refs, hyps);
    oracle::Tally t = oracle::RecountAccuracy(refs, hyps);
    const KindScore* got[4] = {&r.overall, &r.cardinal, &r.currency, &r.fraction};
    for (int k = 0; k < 4; ++k) {
      accuracy_ok = accuracy_ok && got[k]->correct == t.correct[k] && got[k]->error == t.error[k];
    }
  }

  // Alignment cost against textbook edit distance.
  bool align_ok = true;
  const std::vector<std::string> letters = {"a", "b", "c", "d"};
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> a, b;
    std::size_t la = rng.Below(12), lb = rng.Below(12);
    for (std::size_t k = 0; k < la; ++k) a.push_back(letters[rng.Below(4)]);
    for (std::size_t k = 0; k < lb; ++k) b.push_back(letters[rng.Below(4)]);
    align_ok = align_ok && AlignmentCost(AlignTokens(a, b)) == oracle::EditDistance(a, b);
  }

  // n-gram overlap against a set-intersection recount.
  bool overlap_ok = true;
  std::vector<std::vector<std::string>> corpora = {
      cli::SynthCorpus(cli::Domain::kSource, 300, 5), cli::SynthCorpus(cli::Domain::kTarget, 300, 5),
      cli::SynthCorpus(cli::Domain::kGeneral, 300, 5)};
  std::size_t checks = 0;
  for (std::size_t x = 0; x < corpora.size(); ++x) {
    for (std::size_t y = 0; y < corpora.size(); ++y) {
      for (std::size_t n : {1, 2}) {
        for (std::size_t k : {5, 40, 10000}) {
          ++checks;
          double got = NgramOverlap(corpora[x], corpora[y], n, k, DefaultStopwords());
          double want = oracle::OverlapPercent(corpora[x], corpora[y], n, k, DefaultStopwords());
          overlap_ok = overlap_ok && got == want;
        }
      }
    }
  }
  return {accuracy_ok && align_ok && overlap_ok,
          std::string("accuracy recount ") + (accuracy_ok ? "agrees" : "DIFFERS") +
              " on 100 corpora; edit distance " + (align_ok ? "agrees" : "DIFFERS") +
              " on 1000 pairs; overlap " + (overlap_ok ? "agrees" : "DIFFERS") + " on " +
              std::to_string(checks) + " corpus pairs"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"expansion golden set", ExpansionGolden, 1},
      {"label application golden row", DollarRows, 1},
      {"trace label round trip", RoundTrip, 120},
      {"diversity", DiversityCheck, 0},
      {"domain shift pretrain+finetune vs finetune only", DomainShift, 600},
      {"gradient check", GradientCheck, 0},
      {"memorization", Memorization, 0},
      {"tokenizer protection", TokenizerProtection, 0},
      {"model size budget", ModelBudget, 0},
      {"metric oracles", MetricOracles, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && sec >= c.budget_seconds) {
      o.pass = false;
      o.detail += "; over the " + Fmt("%.0f", c.budget_seconds) + " s budget";
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << c.name << ": " << o.detail
              << " [" << Fmt("%.2f", sec) << " s]" << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}
