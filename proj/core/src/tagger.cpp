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

#include "itn/tagger.hpp"

#include <cmath>
#include <stdexcept>

#include "itn/error.hpp"
#include "itn/verbalize.hpp"

namespace itn {

void TaggerConfig::Validate() const {
  if (vocab_size < PieceVocab::kBaseSize) throw std::invalid_argument("vocab_size too small");
  if (embed_dim == 0 || head_hidden == 0 || layers == 0) {
    throw std::invalid_argument("model dimensions must be positive");
  }
  if (hidden_dim == 0 || hidden_dim % 2 != 0) {
    throw std::invalid_argument("hidden_dim must be a positive even number");
  }
  if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
  if (!(learning_rate > 0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(validation_fraction > 0 && validation_fraction < 1)) {
    throw std::invalid_argument("validation_fraction must lie in (0, 1)");
  }
  for (double w : task_weights) {
    if (!(w >= 0)) throw std::invalid_argument("task weights must be non-negative");
  }
}

std::size_t TaggerConfig::ParameterCount() const {
  const std::size_t h = hidden_dim / 2;
  std::size_t n = embed_dim * vocab_size;
  for (std::size_t l = 0; l < layers; ++l) {
    std::size_t in = l == 0 ? embed_dim : hidden_dim;
    n += 2 * (4 * h * in + 4 * h * h + 4 * h);
  }
  for (std::size_t k : kTaskSizes) n += head_hidden * hidden_dim + head_hidden + k * head_hidden + k;
  return n;
}

PieceExample MakePieceExample(const PieceVocab& vocab, const std::vector<std::string>& words,
                              const std::vector<LabelRow>& word_rows) {
  if (words.size() != word_rows.size()) {
    throw Error(ErrorCode::kAlignmentMismatch, std::to_string(words.size()) + " words but " +
                                                   std::to_string(word_rows.size()) + " rows");
  }
  PieceExample ex;
  LabelRow continuation;
  continuation.space = Space::kOff;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto ids = vocab.EncodeWord(words[i]);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      ex.ids.push_back(ids[k]);
      ex.rows.push_back(k == 0 ? word_rows[i] : continuation);
    }
  }
  return ex;
}

namespace {

const char* const kTaskNames[5] = {"rewrite", "prepend", "space", "post_start", "post_end"};

template <typename S>
S Sigmoid(S x) {
  return S(1) / (S(1) + std::exp(-x));
}

}  // namespace

template <typename S>
struct TaggerModel<S>::Cache {
  std::vector<Mat> input;                  // per layer
  std::vector<std::array<Mat, 2>> gates;   // 4H x T: i, f, o, g after activation
  std::vector<std::array<Mat, 2>> cell;    // H x T
  std::vector<std::array<Mat, 2>> tanh_c;  // H x T
  std::vector<std::array<Mat, 2>> hidden;  // H x T
  Mat top;                                 // 2H x T
  std::array<Mat, 5> head_act;             // head_hidden x T
  std::array<Mat, 5> log_probs;            // K x T
};

template <typename S>
std::size_t TaggerModel<S>::AddParam(std::string name, std::size_t rows, std::size_t cols) {
  params_.push_back({std::move(name), Mat::Zero(static_cast<Eigen::Index>(rows),
                                                static_cast<Eigen::Index>(cols)),
                     Mat::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))});
  return params_.size() - 1;
}

template <typename S>
TaggerModel<S>::TaggerModel(const TaggerConfig& config) : config_(config) {
  config_.Validate();
  const std::size_t h = config_.hidden_dim / 2;
  embedding_ = AddParam("embedding", config_.embed_dim, config_.vocab_size);
  for (std::size_t l = 0; l < config_.layers; ++l) {
    std::size_t in = l == 0 ? config_.embed_dim : config_.hidden_dim;
    std::array<Lstm, 2> layer{};
    for (std::size_t d = 0; d < 2; ++d) {
      std::string prefix = "lstm." + std::to_string(l) + (d == 0 ? ".fwd." : ".bwd.");
      layer[d].w = AddParam(prefix + "W", 4 * h, in);
      layer[d].u = AddParam(prefix + "U", 4 * h, h);
      layer[d].b = AddParam(prefix + "b", 4 * h, 1);
    }
    lstm_.push_back(layer);
  }
  for (std::size_t k = 0; k < 5; ++k) {
    std::string prefix = std::string("head.") + kTaskNames[k] + ".";
    heads_[k].w1 = AddParam(prefix + "W1", config_.head_hidden, config_.hidden_dim);
    heads_[k].b1 = AddParam(prefix + "b1", config_.head_hidden, 1);
    heads_[k].w2 = AddParam(prefix + "W2", kTaskSizes[k], config_.head_hidden);
    heads_[k].b2 = AddParam(prefix + "b2", kTaskSizes[k], 1);
  }
}

template <typename S>
void TaggerModel<S>::InitRandom(std::uint64_t seed) {
  Rng rng(SplitMix64(seed));
  auto fill = [&](Mat& m, double scale) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        m(i, j) = static_cast<S>((2 * rng.Uniform() - 1) * scale);
      }
    }
  };
  const double h = static_cast<double>(config_.hidden_dim / 2);
  fill(params_[embedding_].value, 0.1);
  for (auto& layer : lstm_) {
    for (auto& dir : layer) {
      double k = 1 / std::sqrt(h);
      fill(params_[dir.w].value, k);
      fill(params_[dir.u].value, k);
      fill(params_[dir.b].value, k);
      // Forget-gate bias starts open.
      params_[dir.b].value.block(static_cast<Eigen::Index>(h), 0, static_cast<Eigen::Index>(h), 1)
          .array() += S(1);
    }
  }
  for (auto& head : heads_) {
    Mat& w1 = params_[head.w1].value;
    Mat& w2 = params_[head.w2].value;
    fill(w1, std::sqrt(6.0 / static_cast<double>(w1.rows() + w1.cols())));
    fill(w2, std::sqrt(6.0 / static_cast<double>(w2.rows() + w2.cols())));
    params_[head.b1].value.setZero();
    params_[head.b2].value.setZero();
  }
}

template <typename S>
typename TaggerModel<S>::Param& TaggerModel<S>::Get(std::string_view name) {
  for (auto& p : params_) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("no parameter named " + std::string(name));
}

template <typename S>
const typename TaggerModel<S>::Param& TaggerModel<S>::Get(std::string_view name) const {
  return const_cast<TaggerModel*>(this)->Get(name);
}

template <typename S>
void TaggerModel<S>::ZeroGrad() {
  for (auto& p : params_) p.grad.setZero();
}

template <typename S>
void TaggerModel<S>::RunForward(const std::vector<int>& ids, Cache& cache) const {
  const auto T = static_cast<Eigen::Index>(ids.size());
  const auto H = static_cast<Eigen::Index>(config_.hidden_dim / 2);
  const Mat& emb = params_[embedding_].value;
  Mat x(emb.rows(), T);
  for (Eigen::Index t = 0; t < T; ++t) {
    int id = ids[static_cast<std::size_t>(t)];
    if (id < 0 || id >= emb.cols()) {
      throw Error(ErrorCode::kIdOutOfRange, "piece id " + std::to_string(id) + " outside [0, " +
                                                std::to_string(emb.cols()) + ")");
    }
    x.col(t) = emb.col(id);
  }
  const std::size_t L = lstm_.size();
  cache.input.assign(L, Mat());
  cache.gates.assign(L, {});
  cache.cell.assign(L, {});
  cache.tanh_c.assign(L, {});
  cache.hidden.assign(L, {});
  Mat input = std::move(x);
  for (std::size_t l = 0; l < L; ++l) {
    Mat out(2 * H, T);
    for (std::size_t d = 0; d < 2; ++d) {
      const Mat& W = params_[lstm_[l][d].w].value;
      const Mat& U = params_[lstm_[l][d].u].value;
      const Mat& b = params_[lstm_[l][d].b].value;
      Mat Z = W * input;
      Z.colwise() += b.col(0);
      Mat& gates = cache.gates[l][d];
      Mat& cell = cache.cell[l][d];
      Mat& tanh_c = cache.tanh_c[l][d];
      Mat& hidden = cache.hidden[l][d];
      gates.resize(4 * H, T);
      cell.resize(H, T);
      tanh_c.resize(H, T);
      hidden.resize(H, T);
      Mat h_prev = Mat::Zero(H, 1);
      Mat c_prev = Mat::Zero(H, 1);
      Mat z(4 * H, 1);
      for (Eigen::Index s = 0; s < T; ++s) {
        Eigen::Index t = d == 0 ? s : T - 1 - s;
        z.noalias() = U * h_prev;
        z += Z.col(t);
        for (Eigen::Index k = 0; k < 3 * H; ++k) gates(k, t) = Sigmoid(z(k, 0));
        for (Eigen::Index k = 3 * H; k < 4 * H; ++k) gates(k, t) = std::tanh(z(k, 0));
        for (Eigen::Index k = 0; k < H; ++k) {
          S c = gates(H + k, t) * c_prev(k, 0) + gates(k, t) * gates(3 * H + k, t);
          S tc = std::tanh(c);
          cell(k, t) = c;
          tanh_c(k, t) = tc;
          hidden(k, t) = gates(2 * H + k, t) * tc;
        }
        h_prev = hidden.col(t);
        c_prev = cell.col(t);
      }
      out.block(static_cast<Eigen::Index>(d) * H, 0, H, T) = hidden;
    }
    cache.input[l] = std::move(input);
    input = std::move(out);
  }
  cache.top = std::move(input);
  for (std::size_t k = 0; k < 5; ++k) {
    const Head& hd = heads_[k];
    Mat a = params_[hd.w1].value * cache.top;
    a.colwise() += params_[hd.b1].value.col(0);
    cache.head_act[k] = a.array().tanh().matrix();
    Mat logits = params_[hd.w2].value * cache.head_act[k];
    logits.colwise() += params_[hd.b2].value.col(0);
    for (Eigen::Index t = 0; t < T; ++t) {
      S m = logits.col(t).maxCoeff();
      S lse = m + std::log((logits.col(t).array() - m).exp().sum());
      logits.col(t).array() -= lse;
    }
    cache.log_probs[k] = std::move(logits);
  }
}

template <typename S>
void TaggerModel<S>::RunBackward(const std::vector<int>& ids, Cache& cache,
                                 std::array<Mat, 5>& dlogits) {
  const auto T = static_cast<Eigen::Index>(ids.size());
  const auto H = static_cast<Eigen::Index>(config_.hidden_dim / 2);
  Mat d_top = Mat::Zero(cache.top.rows(), T);
  for (std::size_t k = 0; k < 5; ++k) {
    const Head& hd = heads_[k];
    const Mat& act = cache.head_act[k];
    params_[hd.w2].grad.noalias() += dlogits[k] * act.transpose();
    params_[hd.b2].grad.col(0) += dlogits[k].rowwise().sum();
    Mat d_act = params_[hd.w2].value.transpose() * dlogits[k];
    d_act.array() *= S(1) - act.array().square();
    params_[hd.w1].grad.noalias() += d_act * cache.top.transpose();
    params_[hd.b1].grad.col(0) += d_act.rowwise().sum();
    d_top.noalias() += params_[hd.w1].value.transpose() * d_act;
  }
  for (std::size_t l = lstm_.size(); l-- > 0;) {
    const Mat& input = cache.input[l];
    Mat d_input = Mat::Zero(input.rows(), T);
    for (std::size_t d = 0; d < 2; ++d) {
      const Lstm& p = lstm_[l][d];
      const Mat& U = params_[p.u].value;
      const Mat& gates = cache.gates[l][d];
      const Mat& cell = cache.cell[l][d];
      const Mat& tanh_c = cache.tanh_c[l][d];
      const Mat& hidden = cache.hidden[l][d];
      Mat dZ(4 * H, T);
      Mat h_prev_all = Mat::Zero(H, T);
      Mat dh_next = Mat::Zero(H, 1);
      Mat dc_next = Mat::Zero(H, 1);
      for (Eigen::Index s = T; s-- > 0;) {
        Eigen::Index t = d == 0 ? s : T - 1 - s;
        Eigen::Index tp = d == 0 ? t - 1 : t + 1;  // previous step in processing order
        bool first = s == 0;
        for (Eigen::Index k = 0; k < H; ++k) {
          S dh = d_top(static_cast<Eigen::Index>(d) * H + k, t) + dh_next(k, 0);
          S i = gates(k, t), f = gates(H + k, t), o = gates(2 * H + k, t), g = gates(3 * H + k, t);
          S tc = tanh_c(k, t);
          S c_prev = first ? S(0) : cell(k, tp);
          S d_o = dh * tc;
          S dc = dh * o * (S(1) - tc * tc) + dc_next(k, 0);
          dZ(k, t) = dc * g * i * (S(1) - i);
          dZ(H + k, t) = dc * c_prev * f * (S(1) - f);
          dZ(2 * H + k, t) = d_o * o * (S(1) - o);
          dZ(3 * H + k, t) = dc * i * (S(1) - g * g);
          dc_next(k, 0) = dc * f;
          if (!first) h_prev_all(k, t) = hidden(k, tp);
        }
        dh_next.noalias() = U.transpose() * dZ.col(t);
      }
      params_[p.u].grad.noalias() += dZ * h_prev_all.transpose();
      params_[p.w].grad.noalias() += dZ * input.transpose();
      params_[p.b].grad.col(0) += dZ.rowwise().sum();
      d_input.noalias() += params_[p.w].value.transpose() * dZ;
    }
    d_top = std::move(d_input);
  }
  Mat& d_emb = params_[embedding_].grad;
  for (Eigen::Index t = 0; t < T; ++t) d_emb.col(ids[static_cast<std::size_t>(t)]) += d_top.col(t);
}

template <typename S>
std::array<typename TaggerModel<S>::Mat, 5> TaggerModel<S>::Forward(
    const std::vector<int>& ids) const {
  Cache cache;
  RunForward(ids, cache);
  std::array<Mat, 5> out;
  for (std::size_t k = 0; k < 5; ++k) out[k] = cache.log_probs[k].array().exp().matrix();
  return out;
}

template <typename S>
S TaggerModel<S>::Loss(const std::vector<const PieceExample*>& batch, bool accumulate) {
  std::size_t pieces = 0;
  for (const PieceExample* ex : batch) {
    if (ex->ids.size() != ex->rows.size()) {
      throw Error(ErrorCode::kAlignmentMismatch, std::to_string(ex->ids.size()) + " pieces but " +
                                                     std::to_string(ex->rows.size()) + " rows");
    }
    pieces += ex->ids.size();
  }
  if (pieces == 0) return S(0);
  const S scale = S(1) / static_cast<S>(pieces);
  S total = 0;
  Cache cache;
  std::array<Mat, 5> dlogits;
  for (const PieceExample* ex : batch) {
    if (ex->ids.empty()) continue;
    RunForward(ex->ids, cache);
    const auto T = static_cast<Eigen::Index>(ex->ids.size());
    for (std::size_t k = 0; k < 5; ++k) {
      const S w = static_cast<S>(config_.task_weights[k]);
      if (accumulate) dlogits[k] = cache.log_probs[k].array().exp().matrix() * (w * scale);
      for (Eigen::Index t = 0; t < T; ++t) {
        int cls = ex->rows[static_cast<std::size_t>(t)].Classes()[k];
        total -= w * cache.log_probs[k](cls, t);
        if (accumulate) dlogits[k](cls, t) -= w * scale;
      }
    }
    if (accumulate) RunBackward(ex->ids, cache, dlogits);
  }
  return total * scale;
}

template class TaggerModel<float>;
template class TaggerModel<double>;
template class TaggerModel<long double>;

}  // namespace itn
