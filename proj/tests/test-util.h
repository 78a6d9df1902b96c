// tests/test-util.h

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

// Brute-force oracles and random instance generators shared by the unit
// tests and the acceptance binary. Nothing here calls the code under test
// except to build inputs.

#ifndef HASR_TESTS_TEST_UTIL_H_
#define HASR_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hasr/fst.h"
#include "hasr/lattice.h"
#include "hasr/ngram.h"
#include "hasr/posteriorgram.h"
#include "hasr/rnnlm.h"

namespace hasr {
namespace testing {

inline double Uniform(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int RandInt(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Arcs only point to higher state ids, so every path is finite.
inline WeightedFst RandomAcyclicFst(std::mt19937_64 &rng, int num_states, int max_label,
                                    double eps_prob, int max_out_arcs = 3) {
  WeightedFst f;
  for (int s = 0; s < num_states; ++s) f.AddState();
  f.SetStart(0);
  auto label = [&]() {
    return Uniform(rng, 0, 1) < eps_prob ? 0 : RandInt(rng, 1, max_label);
  };
  for (int s = 0; s + 1 < num_states; ++s) {
    for (int k = RandInt(rng, 0, max_out_arcs); k > 0; --k) {
      int t = RandInt(rng, s + 1, num_states - 1);
      f.AddArc(s, Arc{label(), label(), std::round(Uniform(rng, -1, 3) * 8) / 8 + 0.01 * k, t});
    }
  }
  for (int s = 0; s < num_states; ++s)
    if (s == num_states - 1 || Uniform(rng, 0, 1) < 0.3) f.SetFinal(s, Uniform(rng, 0, 2));
  return f;
}

// (input labels, output labels) with epsilons dropped -> lowest weight.
using PathSet = std::map<std::pair<std::vector<Label>, std::vector<Label>>, double>;

inline PathSet EnumeratePaths(const WeightedFst &f, size_t max_len) {
  PathSet out;
  if (f.NumStates() == 0 || f.Start() < 0) return out;
  std::vector<Label> in, o;
  std::function<void(StateId, double, size_t)> walk = [&](StateId s, double w, size_t depth) {
    if (f.IsFinal(s)) {
      auto key = std::make_pair(in, o);
      double total = w + f.Final(s);
      auto it = out.find(key);
      if (it == out.end() || total < it->second) out[key] = total;
    }
    if (depth == max_len) return;
    for (const auto &a : f.Arcs(s)) {
      if (a.ilabel) in.push_back(a.ilabel);
      if (a.olabel) o.push_back(a.olabel);
      walk(a.nextstate, w + a.weight, depth + 1);
      if (a.ilabel) in.pop_back();
      if (a.olabel) o.pop_back();
    }
  };
  walk(f.Start(), 0.0, 0);
  return out;
}

// Relational composition of two enumerated path sets.
inline PathSet ComposePathSets(const PathSet &a, const PathSet &b) {
  PathSet out;
  for (const auto &[ka, wa] : a)
    for (const auto &[kb, wb] : b) {
      if (ka.second != kb.first) continue;
      auto key = std::make_pair(ka.first, kb.second);
      auto it = out.find(key);
      if (it == out.end() || wa + wb < it->second) out[key] = wa + wb;
    }
  return out;
}

inline bool SamePathSets(const PathSet &a, const PathSet &b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto &[k, w] : a) {
    auto it = b.find(k);
    if (it == b.end() || std::fabs(it->second - w) > tol) return false;
  }
  return true;
}

// Decoding graph with emitting arcs anywhere (cycles allowed) and epsilon
// arcs only towards higher state ids. Weights are non-negative.
inline WeightedFst RandomDecodingGraph(std::mt19937_64 &rng, int num_states, int num_classes,
                                       int num_words = 3) {
  WeightedFst g;
  for (int s = 0; s < num_states; ++s) g.AddState();
  g.SetStart(0);
  for (int s = 0; s < num_states; ++s) {
    for (int k = RandInt(rng, 1, 3); k > 0; --k) {
      Label olabel = Uniform(rng, 0, 1) < 0.5 ? 0 : RandInt(rng, 1, num_words);
      g.AddArc(s, Arc{RandInt(rng, 1, num_classes), olabel, Uniform(rng, 0, 2),
                      RandInt(rng, 0, num_states - 1)});
    }
    if (s + 1 < num_states && Uniform(rng, 0, 1) < 0.3)
      g.AddArc(s, Arc{0, Uniform(rng, 0, 1) < 0.5 ? 0 : RandInt(rng, 1, num_words),
                      Uniform(rng, 0, 2), RandInt(rng, s + 1, num_states - 1)});
    if (Uniform(rng, 0, 1) < 0.4) g.SetFinal(s, Uniform(rng, 0, 1));
  }
  g.SetFinal(num_states - 1, Uniform(rng, 0, 1));
  auto syms = std::make_shared<SymbolTable>();
  for (int w = 1; w <= num_words; ++w) syms->AddSymbol("w" + std::to_string(w));
  g.SetOutputSymbols(syms);
  return g;
}

// Log-softmax rows, so every acoustic cost is non-negative.
inline Posteriorgram RandomPosteriorgram(std::mt19937_64 &rng, int frames, int classes) {
  Posteriorgram pg("rand", frames, classes);
  for (int t = 0; t < frames; ++t) {
    std::vector<double> x(classes);
    double mx = -1e300;
    for (double &v : x) mx = std::max(mx, v = Uniform(rng, -3, 3));
    double sum = 0;
    for (double v : x) sum += std::exp(v - mx);
    for (int k = 0; k < classes; ++k)
      pg(t, k) = static_cast<float>(x[k] - mx - std::log(sum));
  }
  return pg;
}

// Lowest cost over every path that consumes exactly the frames of `pg`,
// enumerated depth first. Costs are accumulated in path order, so the
// result is bit-comparable with a Viterbi search using the same order.
inline double BruteForceDecodeCost(const WeightedFst &g, const Posteriorgram &pg,
                                   double scale) {
  double best = std::numeric_limits<double>::infinity();
  const int T = pg.num_frames;
  std::function<void(StateId, int, double)> walk = [&](StateId s, int t, double cost) {
    if (cost >= best) return;  // all later terms are non-negative
    if (t == T && g.IsFinal(s)) best = std::min(best, cost + g.Final(s));
    for (const auto &a : g.Arcs(s)) {
      if (a.ilabel == 0) {
        walk(a.nextstate, t, cost + a.weight);
      } else if (t < T) {
        const double am = -(scale * static_cast<double>(pg(t, a.ilabel - 1)));
        walk(a.nextstate, t + 1, (cost + a.weight) + am);
      }
    }
  };
  walk(g.Start(), 0, 0.0);
  return best;
}

// Lattice over the histories of a bigram LM: states are (frame, last word)
// and every arc carries the exact LM cost of its word, so a path's lm sum
// equals -ln P(words </s> | <s>) up to rounding.
inline Lattice RandomLmLattice(std::mt19937_64 &rng, const BackoffNGramLM &lm,
                               const std::shared_ptr<const SymbolTable> &syms, int frames,
                               int max_branch) {
  std::vector<WordId> vocab;
  for (WordId w = 0; w < static_cast<WordId>(lm.VocabSize()); ++w)
    if (w != lm.bos() && w != lm.eos() && w != lm.unk()) vocab.push_back(w);
  Lattice lat;
  lat.SetWords(syms);
  std::map<std::pair<int, WordId>, int32_t> state_of;
  state_of[{0, lm.bos()}] = lat.AddState(0);
  std::vector<std::pair<int32_t, WordId>> layer{{0, lm.bos()}};
  const double ln10 = std::log(10.0);
  for (int t = 0; t < frames; ++t) {
    std::vector<std::pair<int32_t, WordId>> next;
    for (const auto &[s, prev] : layer) {
      for (int k = RandInt(rng, 1, max_branch); k > 0; --k) {
        WordId w = vocab[RandInt(rng, 0, static_cast<int>(vocab.size()) - 1)];
        auto key = std::make_pair(t + 1, w);
        auto it = state_of.find(key);
        if (it == state_of.end()) {
          it = state_of.emplace(key, lat.AddState(t + 1)).first;
          next.emplace_back(it->second, w);
        }
        const std::vector<WordId> hist{prev};
        const double lmc = -lm.LogProb(hist, w) * ln10;
        lat.AddArc(s, LatticeArc{syms->Find(lm.Word(w)), Uniform(rng, 0, 4), lmc, it->second});
      }
    }
    layer = std::move(next);
  }
  for (const auto &[s, prev] : layer) {
    const std::vector<WordId> hist{prev};
    lat.SetFinal(s, 0.0, -lm.LogProb(hist, lm.eos()) * ln10);
  }
  return lat;
}

struct PathCost {
  double am, lm;
};

// Word sequence -> costs of its cheapest path (am + lm).
inline std::map<std::vector<std::string>, PathCost> EnumerateLattice(const Lattice &lat,
                                                                     size_t *num_paths) {
  std::map<std::vector<std::string>, PathCost> out;
  std::vector<std::string> words;
  size_t count = 0;
  std::function<void(int32_t, double, double)> walk = [&](int32_t s, double am, double lm) {
    if (lat.IsFinal(s)) {
      ++count;
      const double fa = am + lat.Final(s).first, fl = lm + lat.Final(s).second;
      auto it = out.find(words);
      if (it == out.end() || fa + fl < it->second.am + it->second.lm) out[words] = {fa, fl};
    }
    for (const auto &a : lat.Arcs(s)) {
      if (a.word != 0) words.push_back(lat.WordString(a.word));
      walk(a.nextstate, am + a.am, lm + a.lm);
      if (a.word != 0) words.pop_back();
    }
  };
  walk(0, 0.0, 0.0);
  if (num_paths) *num_paths = count;
  return out;
}

// Bigram LM trained on random sentences over words w0, w1, ...
inline BackoffNGramLM RandomBigramLm(std::mt19937_64 &rng, int vocab, int sentences,
                                     int order = 2) {
  std::vector<std::vector<std::string>> corpus(sentences);
  for (auto &s : corpus)
    for (int n = RandInt(rng, 1, 6); n > 0; --n)
      s.push_back("w" + std::to_string(RandInt(rng, 0, vocab - 1)));
  return TrainKneserNey(corpus, order);
}

// Largest relative difference between the analytic gradient and central
// finite differences over every parameter: |a - n| / max(|a|, |n|, floor).
inline double RnnGradientCheck(RnnLm model, const std::vector<std::vector<int32_t>> &seqs,
                               double eps, double floor = 1e-6) {
  RnnParams grad;
  model.LossAndGradient(seqs, &grad);
  auto tensors = model.Params().Tensors();
  auto gtensors = grad.Tensors();
  double worst = 0.0;
  for (size_t t = 0; t < tensors.size(); ++t) {
    for (size_t i = 0; i < tensors[t]->size(); ++i) {
      double &p = (*tensors[t])[i];
      const double saved = p;
      p = saved + eps;
      const double up = model.LossAndGradient(seqs, nullptr);
      p = saved - eps;
      const double down = model.LossAndGradient(seqs, nullptr);
      p = saved;
      const double numeric = (up - down) / (2 * eps);
      const double analytic = (*gtensors[t])[i];
      const double scale = std::max({std::fabs(analytic), std::fabs(numeric), floor});
      worst = std::max(worst, std::fabs(analytic - numeric) / scale);
    }
  }
  return worst;
}

// Levenshtein distance by memoized recursion over suffixes.
inline int64_t EditDistanceOracle(const std::vector<std::string> &a,
                                  const std::vector<std::string> &b) {
  std::map<std::pair<size_t, size_t>, int64_t> memo;
  std::function<int64_t(size_t, size_t)> d = [&](size_t i, size_t j) -> int64_t {
    if (i == a.size()) return static_cast<int64_t>(b.size() - j);
    if (j == b.size()) return static_cast<int64_t>(a.size() - i);
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int64_t r = std::min({d(i + 1, j) + 1, d(i, j + 1) + 1,
                          d(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1)});
    return memo[key] = r;
  };
  return d(0, 0);
}

inline std::vector<std::string> RandomTokens(std::mt19937_64 &rng, int max_len,
                                             int alphabet) {
  std::vector<std::string> out(RandInt(rng, 0, max_len));
  for (auto &w : out) w = std::string(1, static_cast<char>('a' + RandInt(rng, 0, alphabet - 1)));
  return out;
}

}  // namespace testing
}  // namespace hasr

#endif  // HASR_TESTS_TEST_UTIL_H_
