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
#include <cmath>
#include <numeric>

#include "itn/error.hpp"
#include "itn/log.hpp"
#include "itn/tagger.hpp"
#include "itn/verbalize.hpp"
#include "render.hpp"

namespace itn {
namespace {

using Model = TaggerModel<float>;
using Mat = Model::Mat;

class Adam {
 public:
  Adam(const Model& model, double lr, double clip) : lr_(lr), clip_(clip) {
    for (const auto& p : model.params()) {
      m_.push_back(Mat::Zero(p.value.rows(), p.value.cols()));
      v_.push_back(Mat::Zero(p.value.rows(), p.value.cols()));
    }
  }

  void Step(Model& model) {
    double norm2 = 0;
    for (const auto& p : model.params()) norm2 += static_cast<double>(p.grad.squaredNorm());
    double norm = std::sqrt(norm2);
    float scale = norm > clip_ ? static_cast<float>(clip_ / norm) : 1.0F;
    ++t_;
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    const auto c1 = static_cast<float>(1 - std::pow(b1, static_cast<double>(t_)));
    const auto c2 = static_cast<float>(1 - std::pow(b2, static_cast<double>(t_)));
    const auto lr = static_cast<float>(lr_);
    for (std::size_t i = 0; i < model.params().size(); ++i) {
      auto& p = model.params()[i];
      auto g = (p.grad.array() * scale).eval();
      m_[i].array() = static_cast<float>(b1) * m_[i].array() + static_cast<float>(1 - b1) * g;
      v_[i].array() = static_cast<float>(b2) * v_[i].array() + static_cast<float>(1 - b2) * g.square();
      p.value.array() -= lr * (m_[i].array() / c1) /
                         ((v_[i].array() / c2).sqrt() + static_cast<float>(eps));
    }
  }

 private:
  double lr_;
  double clip_;
  std::size_t t_ = 0;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
};

void Shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.Below(i)]);
}

std::size_t CountPieces(const std::vector<const PieceExample*>& batch) {
  std::size_t n = 0;
  for (const auto* ex : batch) n += ex->ids.size();
  return n;
}

// Piece-weighted mean loss over `data` in batches, without gradients.
double MeanLoss(Model& model, const std::vector<const PieceExample*>& data, std::size_t batch) {
  double total = 0;
  std::size_t pieces = 0;
  for (std::size_t i = 0; i < data.size(); i += batch) {
    std::vector<const PieceExample*> b(data.begin() + static_cast<std::ptrdiff_t>(i),
                                       data.begin() + static_cast<std::ptrdiff_t>(
                                                          std::min(data.size(), i + batch)));
    std::size_t n = CountPieces(b);
    total += static_cast<double>(model.Loss(b, false)) * static_cast<double>(n);
    pieces += n;
  }
  return pieces == 0 ? 0 : total / static_cast<double>(pieces);
}

double Accuracy(const Model& model, const std::vector<const PieceExample*>& data) {
  std::size_t right = 0, total = 0;
  for (const auto* ex : data) {
    if (ex->ids.empty()) continue;
    auto probs = model.Forward(ex->ids);
    for (std::size_t t = 0; t < ex->ids.size(); ++t) {
      auto gold = ex->rows[t].Classes();
      bool ok = true;
      for (std::size_t k = 0; k < 5 && ok; ++k) {
        Eigen::Index arg = 0;
        probs[k].col(static_cast<Eigen::Index>(t)).maxCoeff(&arg);
        ok = arg == gold[k];
      }
      right += ok ? 1 : 0;
      ++total;
    }
  }
  return total == 0 ? 0 : static_cast<double>(right) / static_cast<double>(total);
}

double TrainEpoch(Model& model, Adam& adam, const std::vector<const PieceExample*>& train,
                  std::size_t batch_size, Rng& rng) {
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  double total = 0;
  std::size_t pieces = 0;
  for (std::size_t i = 0; i < order.size(); i += batch_size) {
    std::vector<const PieceExample*> batch;
    for (std::size_t j = i; j < std::min(order.size(), i + batch_size); ++j) {
      batch.push_back(train[order[j]]);
    }
    std::size_t n = CountPieces(batch);
    if (n == 0) continue;
    model.ZeroGrad();
    total += static_cast<double>(model.Loss(batch, true)) * static_cast<double>(n);
    pieces += n;
    adam.Step(model);
  }
  return pieces == 0 ? 0 : total / static_cast<double>(pieces);
}

// One phase with an 80:20 split, early stopping and best-checkpoint restore.
void RunPhase(Model& model, const std::vector<PieceExample>& data, std::size_t epochs,
              const std::string& phase, std::uint64_t seed, TrainResult& result,
              const std::function<void(const EpochLog&)>& on_epoch) {
  const TaggerConfig& cfg = model.config();
  Rng rng(SplitMix64(seed));
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  auto n_val = static_cast<std::size_t>(std::round(cfg.validation_fraction *
                                                   static_cast<double>(data.size())));
  n_val = std::min(n_val, data.size() > 1 ? data.size() - 1 : 0);
  std::vector<const PieceExample*> train, val;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_val ? val : train).push_back(&data[order[i]]);
  }
  if (val.empty()) val = train;

  Adam adam(model, cfg.learning_rate, cfg.clip_norm);
  double best = MeanLoss(model, val, cfg.batch_size);
  std::vector<Mat> best_params;
  for (const auto& p : model.params()) best_params.push_back(p.value);
  std::size_t stale = 0;
  for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
    EpochLog log;
    log.phase = phase;
    log.epoch = epoch;
    log.train_loss = TrainEpoch(model, adam, train, cfg.batch_size, rng);
    log.val_loss = MeanLoss(model, val, cfg.batch_size);
    log.val_accuracy = Accuracy(model, val);
    result.log.push_back(log);
    if (on_epoch) on_epoch(log);
    if (log.val_loss < best) {
      best = log.val_loss;
      stale = 0;
      for (std::size_t i = 0; i < best_params.size(); ++i) best_params[i] = model.params()[i].value;
    } else if (++stale >= cfg.patience) {
      break;
    }
  }
  for (std::size_t i = 0; i < best_params.size(); ++i) {
    model.params()[i].value = std::move(best_params[i]);
  }
  result.final_val_loss = best;
}

}  // namespace

double PieceAccuracy(const TaggerModel<float>& model, const std::vector<PieceExample>& data) {
  std::vector<const PieceExample*> ptrs;
  for (const auto& ex : data) ptrs.push_back(&ex);
  return Accuracy(model, ptrs);
}

TrainResult TrainTagger(TaggerModel<float>& model, const std::vector<PieceExample>& pretrain,
                        const std::vector<PieceExample>& finetune,
                        const std::function<void(const EpochLog&)>& on_epoch) {
  if (pretrain.empty() && finetune.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no training pairs");
  }
  TrainResult result;
  const std::uint64_t seed = model.config().seed;
  if (!pretrain.empty()) {
    RunPhase(model, pretrain, model.config().epochs, "pretrain", seed ^ 0x70726574ULL, result,
             on_epoch);
  }
  if (!finetune.empty()) {
    RunPhase(model, finetune, model.config().finetune_epochs, "finetune", seed ^ 0x66696e65ULL,
             result, on_epoch);
  }
  return result;
}

TrainResult FitEpochs(TaggerModel<float>& model, const std::vector<PieceExample>& data,
                      std::size_t epochs, std::uint64_t seed) {
  if (data.empty()) throw Error(ErrorCode::kEmptyDataset, "no training pairs");
  std::vector<const PieceExample*> train;
  for (const auto& ex : data) train.push_back(&ex);
  Adam adam(model, model.config().learning_rate, model.config().clip_norm);
  Rng rng(SplitMix64(seed));
  TrainResult result;
  for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
    EpochLog log;
    log.phase = "fit";
    log.epoch = epoch;
    log.train_loss = TrainEpoch(model, adam, train, model.config().batch_size, rng);
    log.val_loss = log.train_loss;
    log.val_accuracy = Accuracy(model, train);
    result.log.push_back(log);
    result.final_val_loss = log.train_loss;
    if (log.val_accuracy == 1.0) break;
  }
  return result;
}

Eigen::MatrixXf PretrainEmbeddings(const std::vector<std::vector<int>>& corpus,
                                   std::size_t vocab_size, std::size_t embed_dim,
                                   const EmbeddingPretrainConfig& config) {
  std::size_t tokens = 0;
  std::vector<double> freq(vocab_size, 0);
  for (const auto& s : corpus) {
    for (int id : s) {
      if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) {
        throw Error(ErrorCode::kIdOutOfRange, "piece id " + std::to_string(id));
      }
      freq[static_cast<std::size_t>(id)] += 1;
      ++tokens;
    }
  }
  if (tokens == 0) throw Error(ErrorCode::kEmptyCorpus, "no pieces to pretrain on");

  // Negative-sampling table over unigram^0.75.
  std::vector<double> cdf(vocab_size);
  double acc = 0;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    acc += std::pow(freq[i], 0.75);
    cdf[i] = acc;
  }
  Rng rng(SplitMix64(config.seed));
  auto sample = [&]() {
    double r = rng.Uniform() * acc;
    return static_cast<Eigen::Index>(std::upper_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
  };

  const auto E = static_cast<Eigen::Index>(embed_dim);
  const auto V = static_cast<Eigen::Index>(vocab_size);
  Eigen::MatrixXf in(E, V);
  for (Eigen::Index j = 0; j < V; ++j) {
    for (Eigen::Index i = 0; i < E; ++i) {
      in(i, j) = static_cast<float>((rng.Uniform() - 0.5) / static_cast<double>(embed_dim));
    }
  }
  Eigen::MatrixXf out = Eigen::MatrixXf::Zero(E, V);
  const double steps = static_cast<double>(config.epochs) * static_cast<double>(tokens);
  double done = 0;
  Eigen::VectorXf grad(E);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto& s : corpus) {
      for (std::size_t t = 0; t + 1 < s.size(); ++t) {
        auto lr = static_cast<float>(config.learning_rate * std::max(1e-4, 1 - done / steps));
        done += 1;
        Eigen::Index center = s[t];
        grad.setZero();
        for (std::size_t k = 0; k <= config.negatives; ++k) {
          Eigen::Index target = k == 0 ? s[t + 1] : sample();
          if (k > 0 && target == s[t + 1]) continue;
          float label = k == 0 ? 1.0F : 0.0F;
          float score = in.col(center).dot(out.col(target));
          float g = lr * (label - 1.0F / (1.0F + std::exp(-score)));
          grad += g * out.col(target);
          out.col(target) += g * in.col(center);
        }
        in.col(center) += grad;
      }
    }
  }
  return in;
}

void SetPretrainedEmbedding(TaggerModel<float>& model, const Eigen::MatrixXf& embedding) {
  Mat& emb = model.Get("embedding").value;
  if (emb.rows() != embedding.rows() || emb.cols() != embedding.cols()) {
    throw Error(ErrorCode::kAlignmentMismatch, "pretrained embedding has the wrong shape");
  }
  const float rms = std::sqrt(embedding.squaredNorm() / static_cast<float>(embedding.size()));
  const float target = 0.1F / std::sqrt(3.0F);  // RMS of uniform(-0.1, 0.1)
  emb = rms > 0 ? Mat(embedding * (target / rms)) : Mat(embedding);
}

void QuantizeToHalf(TaggerModel<float>& model) {
  for (auto& p : model.params()) {
    p.value = p.value.cast<Eigen::half>().cast<float>();
  }
}

namespace {

bool TryApply(const std::vector<std::string>& words, const std::vector<LabelRow>& rows,
              const RewriteLexicon& lexicon, std::string& out) {
  try {
    out = ApplyLabels(words, rows, lexicon);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Drops markers that have no partner of the same type.
void BalanceMarkers(std::vector<LabelRow>& rows) {
  std::array<std::ptrdiff_t, kNumPost> open;
  open.fill(-1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (Post t = rows[i].post_start; t != Post::kNone) {
      auto k = static_cast<std::size_t>(t);
      if (open[k] >= 0) rows[static_cast<std::size_t>(open[k])].post_start = Post::kNone;
      open[k] = static_cast<std::ptrdiff_t>(i);
    }
    if (Post t = rows[i].post_end; t != Post::kNone) {
      auto k = static_cast<std::size_t>(t);
      if (open[k] < 0) {
        rows[i].post_end = Post::kNone;
      } else {
        open[k] = -1;
      }
    }
  }
  for (auto o : open) {
    if (o >= 0) rows[static_cast<std::size_t>(o)].post_start = Post::kNone;
  }
}

}  // namespace

TagResult TagSentence(const TaggerModel<float>& model, const PieceVocab& vocab,
                      const std::vector<std::string>& words, const RewriteLexicon& lexicon) {
  TagResult result;
  result.rows.assign(words.size(), LabelRow::Identity());
  if (words.empty()) return result;
  std::vector<int> ids;
  std::vector<std::size_t> first_piece;
  for (const auto& w : words) {
    first_piece.push_back(ids.size());
    auto p = vocab.EncodeWord(w);
    ids.insert(ids.end(), p.begin(), p.end());
  }
  auto probs = model.Forward(ids);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::array<int, 5> cls{};
    for (std::size_t k = 0; k < 5; ++k) {
      Eigen::Index arg = 0;
      probs[k].col(static_cast<Eigen::Index>(first_piece[i])).maxCoeff(&arg);
      cls[k] = static_cast<int>(arg);
    }
    LabelRow row = LabelRow::FromClasses(cls);
    // A rewrite the lexicon cannot perform for this word degrades to None.
    if (row.rewrite != Rewrite::kNone && !lexicon.Contains(words[i], row.rewrite)) {
      row.rewrite = Rewrite::kNone;
    }
    result.rows[i] = row;
  }
  if (TryApply(words, result.rows, lexicon, result.written)) return result;

  result.repaired = true;
  BalanceMarkers(result.rows);
  if (TryApply(words, result.rows, lexicon, result.written)) return result;
  // Reset one region at a time to identity rows.
  while (true) {
    std::vector<detail::Region> regions;
    try {
      regions = detail::CollectRegions(result.rows, result.rows.size(), false);
    } catch (const Error&) {
      break;
    }
    if (regions.empty()) break;
    const auto& r = regions.front();
    for (std::size_t i = r.begin; i <= r.end; ++i) result.rows[i] = LabelRow::Identity();
    if (TryApply(words, result.rows, lexicon, result.written)) return result;
  }
  result.rows.assign(words.size(), LabelRow::Identity());
  result.written = ApplyLabels(words, result.rows, lexicon);
  return result;
}

}  // namespace itn
