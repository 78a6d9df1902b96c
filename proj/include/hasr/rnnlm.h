// include/hasr/rnnlm.h

// Copyright 2026  The hasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HASR_RNNLM_H_
#define HASR_RNNLM_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace hasr {

/// Parameter (or gradient) tensors of a single-layer LSTM language model.
/// Gate rows of w and b are ordered input, forget, output, candidate.
struct RnnParams {
  std::vector<double> emb;    // V x E
  std::vector<double> w;      // 4H x (E + H), acting on [x; h_prev]
  std::vector<double> b;      // 4H
  std::vector<double> out_w;  // V x H
  std::vector<double> out_b;  // V

  void Resize(int32_t vocab, int32_t embed, int32_t hidden);
  void SetZero();
  /// All tensors in a fixed order, for generic updates and checks.
  std::vector<std::vector<double> *> Tensors();
  std::vector<const std::vector<double> *> Tensors() const;
};

class RnnLm {
 public:
  static constexpr const char *kBos = "<s>";
  static constexpr const char *kEos = "</s>";
  static constexpr const char *kUnk = "<unk>";
  static constexpr uint32_t kFormatVersion = 1;

  RnnLm() = default;
  /// Vocabulary is the three reserved symbols followed by `words` (sorted,
  /// without duplicates). All parameters start at zero. Throws
  /// Error("BadDims") for dims < 1.
  RnnLm(const std::vector<std::string> &words, int32_t embed_dim, int32_t hidden_dim);

  /// Uniform(-scale, scale) initialization from a seeded generator.
  void InitRandom(uint64_t seed, double scale = 0.1);

  int32_t VocabSize() const { return static_cast<int32_t>(vocab_.size()); }
  int32_t EmbedDim() const { return embed_; }
  int32_t HiddenDim() const { return hidden_; }
  int32_t EpochsTrained() const { return epochs_; }
  void SetEpochsTrained(int32_t e) { epochs_ = e; }
  const std::vector<std::string> &Vocab() const { return vocab_; }
  int32_t Id(const std::string &word) const;  // <unk> id for unknown words
  int32_t BosId() const { return 0; }
  int32_t EosId() const { return 1; }
  int32_t UnkId() const { return 2; }

  RnnParams &Params() { return params_; }
  const RnnParams &Params() const { return params_; }

  /// Input ids <s> w1..wn and target ids w1..wn </s>.
  std::vector<int32_t> Ids(const std::vector<std::string> &words) const;

  /// Next-unit distribution after consuming <s> followed by `history`.
  std::vector<double> NextDistribution(const std::vector<std::string> &history) const;

  /// -ln P(words </s> | <s>).
  double SentenceCost(const std::vector<std::string> &words) const;

  /// Sum of -ln P over the sequences (each given as ids w1..wn, with <s>
  /// and </s> added), with full backpropagation through time. `grad` is
  /// overwritten when non-null.
  double LossAndGradient(const std::vector<std::vector<int32_t>> &sequences,
                         RnnParams *grad) const;

  void Write(const std::string &path) const;
  void Write(std::ostream &os) const;
  /// Throws Error("BadModel").
  static RnnLm Read(const std::string &path);
  static RnnLm Read(std::istream &is);

  /// Forward/backward over one segment with carried state; used by training.
  struct State {
    std::vector<double> h, c;
  };
  double SegmentLossAndGradient(const std::vector<int32_t> &inputs,
                                const std::vector<int32_t> &targets, State *state,
                                RnnParams *grad) const;

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int32_t> ids_;
  int32_t embed_ = 0;
  int32_t hidden_ = 0;
  int32_t epochs_ = 0;
  RnnParams params_;
};

struct RnnTrainOptions {
  int32_t embed_dim = 16;
  int32_t hidden_dim = 16;
  int32_t epochs = 10;
  double learning_rate = 0.1;
  uint64_t seed = 0;
  int32_t bptt = 20;         // truncation length in tokens
  double clip_norm = 5.0;    // gradient norm clipping per update
  double init_scale = 0.1;
};

struct RnnEpochStats {
  int32_t epoch;
  double train_loss;          // mean -ln P per token over the training corpus
  double heldout_perplexity;  // 0 when there is no held-out data
};

struct RnnTrainResult {
  RnnLm model;
  double initial_train_loss = 0.0;
  std::vector<RnnEpochStats> epochs;
};

/// Cross-entropy SGD with truncated backpropagation, deterministic given the
/// seed. Throws Error("EmptyCorpus"), Error("BadDims") or
/// Error("TrainDiverged").
RnnTrainResult TrainRnnLm(const std::vector<std::vector<std::string>> &corpus,
                          const std::vector<std::vector<std::string>> &heldout,
                          const RnnTrainOptions &opts);

}  // namespace hasr

#endif  // HASR_RNNLM_H_
