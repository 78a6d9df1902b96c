// src/rnnlm.cc

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

#include "hasr/rnnlm.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include <spdlog/spdlog.h>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"

namespace hasr {

static_assert(std::endian::native == std::endian::little,
              "RNN LM files assume a little-endian host");

void RnnParams::Resize(int32_t vocab, int32_t embed, int32_t hidden) {
  emb.assign(static_cast<size_t>(vocab) * embed, 0.0);
  w.assign(static_cast<size_t>(4 * hidden) * (embed + hidden), 0.0);
  b.assign(static_cast<size_t>(4 * hidden), 0.0);
  out_w.assign(static_cast<size_t>(vocab) * hidden, 0.0);
  out_b.assign(static_cast<size_t>(vocab), 0.0);
}

void RnnParams::SetZero() {
  for (auto *t : Tensors()) std::fill(t->begin(), t->end(), 0.0);
}

std::vector<std::vector<double> *> RnnParams::Tensors() {
  return {&emb, &w, &b, &out_w, &out_b};
}

std::vector<const std::vector<double> *> RnnParams::Tensors() const {
  return {&emb, &w, &b, &out_w, &out_b};
}

RnnLm::RnnLm(const std::vector<std::string> &words, int32_t embed_dim,
             int32_t hidden_dim)
    : embed_(embed_dim), hidden_(hidden_dim) {
  if (embed_dim < 1 || hidden_dim < 1)
    throw Error("BadDims", "embedding and hidden dimensions must be at least 1");
  vocab_ = {kBos, kEos, kUnk};
  std::set<std::string> sorted(words.begin(), words.end());
  for (const auto &w : sorted)
    if (w != kBos && w != kEos && w != kUnk) vocab_.push_back(w);
  for (size_t i = 0; i < vocab_.size(); ++i) ids_[vocab_[i]] = static_cast<int32_t>(i);
  params_.Resize(VocabSize(), embed_, hidden_);
}

void RnnLm::InitRandom(uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (auto *t : params_.Tensors())
    for (double &v : *t) v = dist(rng);
}

int32_t RnnLm::Id(const std::string &word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? UnkId() : it->second;
}

std::vector<int32_t> RnnLm::Ids(const std::vector<std::string> &words) const {
  std::vector<int32_t> ids;
  ids.reserve(words.size());
  for (const auto &w : words) ids.push_back(Id(w));
  return ids;
}

namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Activations of one time step, kept for backpropagation.
struct StepCache {
  std::vector<double> v;       // [x; h_prev]
  std::vector<double> gates;   // i, f, o, g after nonlinearity
  std::vector<double> c_prev, c, tanh_c, h;
  std::vector<double> prob;
};

}  // namespace

double RnnLm::SegmentLossAndGradient(const std::vector<int32_t> &inputs,
                                     const std::vector<int32_t> &targets,
                                     State *state, RnnParams *grad) const {
  const int32_t V = VocabSize(), E = embed_, H = hidden_, D = E + H;
  const auto &P = params_;
  if (state->h.empty()) {
    state->h.assign(H, 0.0);
    state->c.assign(H, 0.0);
  }
  std::vector<StepCache> steps(inputs.size());
  double loss = 0.0;
  for (size_t t = 0; t < inputs.size(); ++t) {
    StepCache &st = steps[t];
    st.v.resize(D);
    std::copy_n(&P.emb[static_cast<size_t>(inputs[t]) * E], E, st.v.begin());
    std::copy(state->h.begin(), state->h.end(), st.v.begin() + E);
    st.gates.resize(4 * H);
    for (int32_t r = 0; r < 4 * H; ++r) {
      const double *row = &P.w[static_cast<size_t>(r) * D];
      double z = P.b[r];
      for (int32_t k = 0; k < D; ++k) z += row[k] * st.v[k];
      st.gates[r] = r < 3 * H ? Sigmoid(z) : std::tanh(z);
    }
    st.c_prev = state->c;
    st.c.resize(H);
    st.tanh_c.resize(H);
    st.h.resize(H);
    for (int32_t j = 0; j < H; ++j) {
      st.c[j] = st.gates[H + j] * st.c_prev[j] + st.gates[j] * st.gates[3 * H + j];
      st.tanh_c[j] = std::tanh(st.c[j]);
      st.h[j] = st.gates[2 * H + j] * st.tanh_c[j];
    }
    st.prob.resize(V);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (int32_t u = 0; u < V; ++u) {
      const double *row = &P.out_w[static_cast<size_t>(u) * H];
      double z = P.out_b[u];
      for (int32_t j = 0; j < H; ++j) z += row[j] * st.h[j];
      st.prob[u] = z;
      max_logit = std::max(max_logit, z);
    }
    double sum = 0.0;
    for (int32_t u = 0; u < V; ++u) sum += std::exp(st.prob[u] - max_logit);
    const double log_norm = max_logit + std::log(sum);
    loss += log_norm - st.prob[targets[t]];
    for (int32_t u = 0; u < V; ++u) st.prob[u] = std::exp(st.prob[u] - log_norm);
    state->h = st.h;
    state->c = st.c;
  }
  if (!grad) return loss;

  std::vector<double> dh_next(H, 0.0), dc_next(H, 0.0), dh(H), dz(4 * H);
  for (size_t t = inputs.size(); t-- > 0;) {
    const StepCache &st = steps[t];
    std::copy(dh_next.begin(), dh_next.end(), dh.begin());
    for (int32_t u = 0; u < V; ++u) {
      const double dl = st.prob[u] - (u == targets[t] ? 1.0 : 0.0);
      double *grow = &grad->out_w[static_cast<size_t>(u) * H];
      const double *row = &P.out_w[static_cast<size_t>(u) * H];
      for (int32_t j = 0; j < H; ++j) {
        grow[j] += dl * st.h[j];
        dh[j] += row[j] * dl;
      }
      grad->out_b[u] += dl;
    }
    for (int32_t j = 0; j < H; ++j) {
      const double i = st.gates[j], f = st.gates[H + j], o = st.gates[2 * H + j],
                   g = st.gates[3 * H + j];
      const double dc = dh[j] * o * (1.0 - st.tanh_c[j] * st.tanh_c[j]) + dc_next[j];
      dz[j] = dc * g * i * (1.0 - i);
      dz[H + j] = dc * st.c_prev[j] * f * (1.0 - f);
      dz[2 * H + j] = dh[j] * st.tanh_c[j] * o * (1.0 - o);
      dz[3 * H + j] = dc * i * (1.0 - g * g);
      dc_next[j] = dc * f;
    }
    std::vector<double> dv(D, 0.0);
    for (int32_t r = 0; r < 4 * H; ++r) {
      double *grow = &grad->w[static_cast<size_t>(r) * D];
      const double *row = &P.w[static_cast<size_t>(r) * D];
      for (int32_t k = 0; k < D; ++k) {
        grow[k] += dz[r] * st.v[k];
        dv[k] += row[k] * dz[r];
      }
      grad->b[r] += dz[r];
    }
    double *gemb = &grad->emb[static_cast<size_t>(inputs[t]) * E];
    for (int32_t k = 0; k < E; ++k) gemb[k] += dv[k];
    std::copy(dv.begin() + E, dv.end(), dh_next.begin());
  }
  return loss;
}

double RnnLm::LossAndGradient(const std::vector<std::vector<int32_t>> &sequences,
                              RnnParams *grad) const {
  if (grad) {
    grad->Resize(VocabSize(), embed_, hidden_);
  }
  double loss = 0.0;
  for (const auto &seq : sequences) {
    std::vector<int32_t> inputs{BosId()};
    inputs.insert(inputs.end(), seq.begin(), seq.end());
    std::vector<int32_t> targets(seq.begin(), seq.end());
    targets.push_back(EosId());
    State state;
    loss += SegmentLossAndGradient(inputs, targets, &state, grad);
  }
  return loss;
}

std::vector<double> RnnLm::NextDistribution(const std::vector<std::string> &history) const {
  std::vector<int32_t> inputs{BosId()};
  for (int32_t id : Ids(history)) inputs.push_back(id);
  State state;
  // Run all but the last input, then read the distribution of the last step.
  std::vector<int32_t> prefix(inputs.begin(), inputs.end() - 1);
  std::vector<int32_t> prefix_targets(prefix.size(), EosId());
  SegmentLossAndGradient(prefix, prefix_targets, &state, nullptr);
  const int32_t V = VocabSize(), E = embed_, H = hidden_, D = E + H;
  const auto &P = params_;
  std::vector<double> v(D);
  std::copy_n(&P.emb[static_cast<size_t>(inputs.back()) * E], E, v.begin());
  std::copy(state.h.begin(), state.h.end(), v.begin() + E);
  std::vector<double> gates(4 * H), h(H);
  for (int32_t r = 0; r < 4 * H; ++r) {
    double z = P.b[r];
    for (int32_t k = 0; k < D; ++k) z += P.w[static_cast<size_t>(r) * D + k] * v[k];
    gates[r] = r < 3 * H ? Sigmoid(z) : std::tanh(z);
  }
  for (int32_t j = 0; j < H; ++j) {
    const double c = gates[H + j] * state.c[j] + gates[j] * gates[3 * H + j];
    h[j] = gates[2 * H + j] * std::tanh(c);
  }
  std::vector<double> p(V);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (int32_t u = 0; u < V; ++u) {
    double z = P.out_b[u];
    for (int32_t j = 0; j < H; ++j) z += P.out_w[static_cast<size_t>(u) * H + j] * h[j];
    p[u] = z;
    max_logit = std::max(max_logit, z);
  }
  double sum = 0.0;
  for (double &x : p) sum += (x = std::exp(x - max_logit));
  for (double &x : p) x /= sum;
  return p;
}

double RnnLm::SentenceCost(const std::vector<std::string> &words) const {
  return LossAndGradient({Ids(words)}, nullptr);
}

namespace {

template <typename T>
void WritePod(std::ostream &os, const T &v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
void ReadPod(std::istream &is, T *v) {
  is.read(reinterpret_cast<char *>(v), sizeof(T));
  if (!is) throw Error("BadModel", "truncated RNN LM file");
}

}  // namespace

void RnnLm::Write(std::ostream &os) const {
  os.write("HRNN", 4);
  WritePod(os, kFormatVersion);
  WritePod(os, static_cast<uint32_t>(VocabSize()));
  WritePod(os, static_cast<uint32_t>(embed_));
  WritePod(os, static_cast<uint32_t>(hidden_));
  WritePod(os, static_cast<uint32_t>(epochs_));
  for (const auto &w : vocab_) {
    WritePod(os, static_cast<uint32_t>(w.size()));
    os.write(w.data(), static_cast<std::streamsize>(w.size()));
  }
  for (const auto *t : params_.Tensors())
    os.write(reinterpret_cast<const char *>(t->data()),
             static_cast<std::streamsize>(t->size() * sizeof(double)));
}

void RnnLm::Write(const std::string &path) const {
  AtomicWriteFile(path, [this](std::ostream &os) { Write(os); }, true);
}

RnnLm RnnLm::Read(std::istream &is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "HRNN", 4) != 0)
    throw Error("BadModel", "not an RNN LM file");
  uint32_t version, v, e, h, epochs;
  ReadPod(is, &version);
  if (version != kFormatVersion)
    throw Error("BadModel", "unsupported RNN LM format version " + std::to_string(version));
  ReadPod(is, &v);
  ReadPod(is, &e);
  ReadPod(is, &h);
  ReadPod(is, &epochs);
  if (v < 3 || e < 1 || h < 1 || v > (1u << 24) || e > (1u << 16) || h > (1u << 16))
    throw Error("BadModel", "implausible RNN LM dimensions");
  std::vector<std::string> vocab(v);
  for (auto &w : vocab) {
    uint32_t len;
    ReadPod(is, &len);
    if (len > (1u << 16)) throw Error("BadModel", "implausible vocabulary entry");
    w.resize(len);
    is.read(w.data(), len);
    if (!is) throw Error("BadModel", "truncated RNN LM vocabulary");
  }
  if (vocab[0] != kBos || vocab[1] != kEos || vocab[2] != kUnk)
    throw Error("BadModel", "RNN LM vocabulary lacks the reserved symbols");
  RnnLm lm(std::vector<std::string>(vocab.begin() + 3, vocab.end()), e, h);
  if (lm.vocab_ != vocab) throw Error("BadModel", "RNN LM vocabulary is not sorted");
  lm.epochs_ = static_cast<int32_t>(epochs);
  for (auto *t : lm.params_.Tensors()) {
    is.read(reinterpret_cast<char *>(t->data()),
            static_cast<std::streamsize>(t->size() * sizeof(double)));
    if (!is) throw Error("BadModel", "truncated RNN LM parameters");
  }
  return lm;
}

RnnLm RnnLm::Read(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return Read(is);
}

namespace {

double MeanLoss(const RnnLm &lm, const std::vector<std::vector<int32_t>> &seqs) {
  size_t tokens = 0;
  for (const auto &s : seqs) tokens += s.size() + 1;
  return lm.LossAndGradient(seqs, nullptr) / static_cast<double>(tokens);
}

void CheckFinite(double loss, int32_t epoch) {
  if (!std::isfinite(loss))
    throw Error("TrainDiverged", "loss became non-finite in epoch " + std::to_string(epoch) +
                                     "; lower the learning rate");
}

}  // namespace

RnnTrainResult TrainRnnLm(const std::vector<std::vector<std::string>> &corpus,
                          const std::vector<std::vector<std::string>> &heldout,
                          const RnnTrainOptions &opts) {
  size_t num_words = 0;
  std::vector<std::string> words;
  for (const auto &s : corpus) {
    num_words += s.size();
    words.insert(words.end(), s.begin(), s.end());
  }
  if (corpus.empty() || num_words == 0)
    throw Error("EmptyCorpus", "RNN LM training corpus is empty");
  if (opts.bptt < 1) throw Error("BadDims", "bptt length must be at least 1");

  RnnTrainResult res{RnnLm(words, opts.embed_dim, opts.hidden_dim), 0.0, {}};
  RnnLm &lm = res.model;
  lm.InitRandom(opts.seed, opts.init_scale);
  std::vector<std::vector<int32_t>> train, held;
  for (const auto &s : corpus) train.push_back(lm.Ids(s));
  for (const auto &s : heldout) held.push_back(lm.Ids(s));

  res.initial_train_loss = MeanLoss(lm, train);
  CheckFinite(res.initial_train_loss, 0);
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  RnnParams grad;
  grad.Resize(lm.VocabSize(), lm.EmbedDim(), lm.HiddenDim());

  for (int32_t epoch = 1; epoch <= opts.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t idx : order) {
      std::vector<int32_t> inputs{lm.BosId()};
      inputs.insert(inputs.end(), train[idx].begin(), train[idx].end());
      std::vector<int32_t> targets(train[idx].begin(), train[idx].end());
      targets.push_back(lm.EosId());
      RnnLm::State state;
      for (size_t begin = 0; begin < inputs.size(); begin += opts.bptt) {
        const size_t end = std::min(inputs.size(), begin + opts.bptt);
        std::vector<int32_t> in(inputs.begin() + begin, inputs.begin() + end);
        std::vector<int32_t> tg(targets.begin() + begin, targets.begin() + end);
        grad.SetZero();
        double loss = lm.SegmentLossAndGradient(in, tg, &state, &grad);
        CheckFinite(loss, epoch);
        double norm2 = 0.0;
        for (const auto *t : grad.Tensors())
          for (double g : *t) norm2 += g * g;
        const double norm = std::sqrt(norm2);
        const double factor =
            opts.clip_norm > 0 && norm > opts.clip_norm ? opts.clip_norm / norm : 1.0;
        auto params = lm.Params().Tensors();
        auto grads = grad.Tensors();
        for (size_t k = 0; k < params.size(); ++k)
          for (size_t i = 0; i < params[k]->size(); ++i)
            (*params[k])[i] -= opts.learning_rate * factor * (*grads[k])[i];
      }
    }
    RnnEpochStats stats{epoch, MeanLoss(lm, train), 0.0};
    CheckFinite(stats.train_loss, epoch);
    if (!held.empty()) stats.heldout_perplexity = std::exp(MeanLoss(lm, held));
    spdlog::info("rnnlm epoch {}: train loss {:.4f}, held-out perplexity {:.3f}", epoch,
                 stats.train_loss, stats.heldout_perplexity);
    res.epochs.push_back(stats);
    lm.SetEpochsTrained(epoch);
  }
  return res;
}

}  // namespace hasr
