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

#ifndef ITN_TAGGER_HPP_
#define ITN_TAGGER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "itn/labels.hpp"
#include "itn/tokenize.hpp"
#include "itn/types.hpp"

namespace itn {

struct TaggerConfig {
  // Architecture.
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 64;
  std::size_t hidden_dim = 256;  // both directions together
  std::size_t layers = 2;
  std::size_t head_hidden = 128;
  std::array<double, 5> task_weights = {1, 1, 1, 1, 1};

  // Training.
  double learning_rate = 2e-3;
  std::size_t epochs = 20;           // pretraining phase
  std::size_t finetune_epochs = 20;  // finetuning phase
  std::size_t batch_size = 16;
  std::size_t patience = 3;
  double validation_fraction = 0.2;
  double clip_norm = 5.0;
  std::uint64_t seed = 17;

  // Throws std::invalid_argument.
  void Validate() const;
  std::size_t ParameterCount() const;
};

// A sentence at piece level with one label row per piece.
struct PieceExample {
  std::vector<int> ids;
  std::vector<LabelRow> rows;
};

// Word-initial pieces carry the word's row; continuation pieces get
// Rewrite=None, Space=Off and no markers.
PieceExample MakePieceExample(const PieceVocab& vocab, const std::vector<std::string>& words,
                              const std::vector<LabelRow>& word_rows);

// Embedding -> stacked BiLSTM -> one tanh MLP head per label task.
// Scalar is float for training; double and long double serve gradient
// checking.
template <typename S>
class TaggerModel {
 public:
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

  struct Param {
    std::string name;
    Mat value;
    Mat grad;
  };

  // All parameters zero.
  explicit TaggerModel(const TaggerConfig& config);

  void InitRandom(std::uint64_t seed);

  const TaggerConfig& config() const { return config_; }
  std::vector<Param>& params() { return params_; }
  const std::vector<Param>& params() const { return params_; }
  Param& Get(std::string_view name);
  const Param& Get(std::string_view name) const;

  // Per head, a (classes x pieces) matrix of probabilities.
  // Throws Error(kIdOutOfRange).
  std::array<Mat, 5> Forward(const std::vector<int>& ids) const;

  // Task-weighted cross-entropy summed over heads and averaged over all
  // pieces of the batch. With `accumulate` the gradient of that value is
  // added to every Param::grad. Throws Error(kAlignmentMismatch).
  S Loss(const std::vector<const PieceExample*>& batch, bool accumulate);

  void ZeroGrad();

  template <typename T>
  TaggerModel<T> Cast() const {
    TaggerModel<T> out(config_);
    for (std::size_t i = 0; i < params_.size(); ++i) {
      out.params()[i].value = params_[i].value.template cast<T>();
    }
    return out;
  }

 private:
  struct Lstm {
    std::size_t w, u, b;  // indices into params_
  };
  struct Head {
    std::size_t w1, b1, w2, b2;
  };
  struct Cache;

  std::size_t AddParam(std::string name, std::size_t rows, std::size_t cols);
  void RunForward(const std::vector<int>& ids, Cache& cache) const;
  void RunBackward(const std::vector<int>& ids, Cache& cache, std::array<Mat, 5>& dlogits);

  TaggerConfig config_;
  std::vector<Param> params_;
  std::size_t embedding_ = 0;
  std::vector<std::array<Lstm, 2>> lstm_;  // [layer][direction]
  std::array<Head, 5> heads_{};
};

extern template class TaggerModel<float>;
extern template class TaggerModel<double>;
extern template class TaggerModel<long double>;

// --- Training --------------------------------------------------------------

struct EpochLog {
  std::string phase;
  std::size_t epoch = 0;
  double train_loss = 0;
  double val_loss = 0;
  double val_accuracy = 0;  // pieces with all five heads correct
};

struct TrainResult {
  std::vector<EpochLog> log;
  double final_val_loss = 0;
};

// Argmax accuracy over pieces; a piece counts when every head is right.
double PieceAccuracy(const TaggerModel<float>& model, const std::vector<PieceExample>& data);

// Pretraining on `pretrain` then finetuning on `finetune`, each phase with
// its own 80:20 split and early stopping on validation loss. The best
// validation checkpoint of each phase is kept. An empty finetune set skips
// that phase. Throws Error(kEmptyDataset) when both sets are empty.
TrainResult TrainTagger(TaggerModel<float>& model, const std::vector<PieceExample>& pretrain,
                        const std::vector<PieceExample>& finetune,
                        const std::function<void(const EpochLog&)>& on_epoch = {});

// One phase over `data` for exactly the configured budget; exposed for
// tests that need a fixed number of epochs without a validation split.
TrainResult FitEpochs(TaggerModel<float>& model, const std::vector<PieceExample>& data,
                      std::size_t epochs, std::uint64_t seed);

struct EmbeddingPretrainConfig {
  std::size_t epochs = 5;
  std::size_t negatives = 5;
  double learning_rate = 0.05;
  std::uint64_t seed = 17;
};

// Next-piece prediction with negative sampling: the embedding of each piece
// is trained to score its successor above random pieces. Returns the input
// embedding matrix (embed_dim x vocab_size). Throws Error(kEmptyCorpus).
Eigen::MatrixXf PretrainEmbeddings(const std::vector<std::vector<int>>& corpus,
                                   std::size_t vocab_size, std::size_t embed_dim,
                                   const EmbeddingPretrainConfig& config);

// Copies a pretrained matrix into the model's embedding, rescaled to the
// root-mean-square of the random initialization.
void SetPretrainedEmbedding(TaggerModel<float>& model, const Eigen::MatrixXf& embedding);

// Rounds every parameter to the nearest float16 value, which is how the
// model file stores it.
void QuantizeToHalf(TaggerModel<float>& model);

// --- Inference -------------------------------------------------------------

struct TagResult {
  std::vector<LabelRow> rows;
  std::string written;
  bool repaired = false;  // markers had to be dropped to render
};

TagResult TagSentence(const TaggerModel<float>& model, const PieceVocab& vocab,
                      const std::vector<std::string>& words, const RewriteLexicon& lexicon);

// --- Model file ------------------------------------------------------------

// Layout (little-endian):
//   "ITNF" u32 version
//   u32 vocab_size embed_dim hidden_dim layers head_hidden, f32 x5 task weights
//   u32 protected_count, u32 byte length, piece list (pieces after the 259
//       base pieces, escaped, '\n'-separated, marker written as ' ')
//   u32 param_count, then per param: u16 name length, name,
//       u32 rows, u32 cols, rows*cols float16 in column-major order
inline constexpr std::uint32_t kModelFormatVersion = 1;

void SaveModel(std::ostream& out, const TaggerModel<float>& model, const PieceVocab& vocab);
void SaveModelFile(const std::string& path, const TaggerModel<float>& model,
                   const PieceVocab& vocab);

struct LoadedModel {
  TaggerModel<float> model;
  PieceVocab vocab;
};
// Throws Error(kBadModelFile).
LoadedModel LoadModel(std::istream& in);
LoadedModel LoadModelFile(const std::string& path);

}  // namespace itn

#endif  // ITN_TAGGER_HPP_
