// src/ngram.cc

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

#include "hasr/ngram.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hasr/error.h"

namespace hasr {

namespace {

double ToLog10(double p) { return p > 0.0 ? std::log10(p) : kLog10Zero; }

double ToLinear(double log10_p) {
  return log10_p <= kLog10Zero ? 0.0 : std::pow(10.0, log10_p);
}

using CountTable = std::unordered_map<std::vector<WordId>, int64_t, WordSeqHash>;

}  // namespace

BackoffNGramLM::BackoffNGramLM(int order) : order_(order) {
  if (order < 1) throw Error("BadOrder", "n-gram order must be at least 1");
  tables_.resize(order);
  AddWord(kBos);
  AddWord(kEos);
  AddWord(kUnk);
}

WordId BackoffNGramLM::AddWord(const std::string &word) {
  auto it = word_to_id_.find(word);
  if (it != word_to_id_.end()) return it->second;
  WordId id = static_cast<WordId>(words_.size());
  words_.push_back(word);
  word_to_id_.emplace(word, id);
  return id;
}

WordId BackoffNGramLM::Lookup(const std::string &word) const {
  auto it = word_to_id_.find(word);
  return it == word_to_id_.end() ? unk() : it->second;
}

void BackoffNGramLM::SetEntry(const std::vector<WordId> &ngram,
                              const NGramEntry &entry) {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_)
    throw Error("BadOrder", "n-gram length " + std::to_string(ngram.size()) +
                                " outside model order " + std::to_string(order_));
  tables_[ngram.size() - 1][ngram] = entry;
}

const NGramEntry *BackoffNGramLM::Find(std::span<const WordId> ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return nullptr;
  const NGramTable &t = tables_[ngram.size() - 1];
  auto it = t.find(std::vector<WordId>(ngram.begin(), ngram.end()));
  return it == t.end() ? nullptr : &it->second;
}

double BackoffNGramLM::LogProb(std::span<const WordId> history,
                               WordId w) const {
  size_t ctx = std::min(history.size(), static_cast<size_t>(order_ - 1));
  std::vector<WordId> key;
  double backoff = 0.0;
  for (size_t k = ctx;; --k) {
    key.assign(history.end() - k, history.end());
    key.push_back(w);
    if (const NGramEntry *e = Find(key)) return backoff + e->log10_prob;
    if (k == 0) return kLog10Zero;
    key.pop_back();
    if (const NGramEntry *c = Find(key)) backoff += c->log10_backoff;
  }
}

double BackoffNGramLM::ScoreSequence(const std::vector<std::string> &tokens,
                                     const ScoreOptions &opts) const {
  std::vector<WordId> history;
  if (opts.sentence_begin) history.push_back(bos());
  double total = 0.0;
  for (const auto &tok : tokens) {
    WordId id = Lookup(tok);
    total += LogProb(history, id);
    history.push_back(id);
  }
  if (opts.sentence_end) total += LogProb(history, eos());
  return total;
}

std::vector<std::vector<WordId>> BackoffNGramLM::Contexts() const {
  std::vector<std::vector<WordId>> out;
  for (int n = 1; n < order_; ++n)
    for (const auto &key : SortedKeys(n))
      if (tables_[n - 1].at(key).has_backoff) out.push_back(key);
  return out;
}

std::vector<std::vector<WordId>> BackoffNGramLM::SortedKeys(int n) const {
  std::vector<std::vector<WordId>> keys;
  keys.reserve(tables_.at(n - 1).size());
  for (const auto &kv : tables_[n - 1]) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  return keys;
}

BackoffNGramLM TrainKneserNey(
    const std::vector<std::vector<std::string>> &corpus, int order,
    double discount) {
  if (corpus.empty()) throw Error("EmptyCorpus", "n-gram training corpus is empty");
  if (order < 1 || order > 6)
    throw Error("BadOrder", "n-gram order must be in [1, 6], got " +
                                std::to_string(order));
  if (!(discount > 0.0 && discount < 1.0))
    throw Error("BadDiscount", "discount must be in (0, 1)");

  BackoffNGramLM lm(order);
  std::set<std::string> vocab;
  for (const auto &sent : corpus)
    for (const auto &w : sent)
      if (w != BackoffNGramLM::kBos && w != BackoffNGramLM::kEos) vocab.insert(w);
  for (const auto &w : vocab) lm.AddWord(w);

  const WordId bos = lm.bos();
  std::vector<CountTable> raw(order);
  for (const auto &sent : corpus) {
    std::vector<WordId> seq{bos};
    for (const auto &w : sent)
      if (w != BackoffNGramLM::kBos && w != BackoffNGramLM::kEos)
        seq.push_back(lm.Lookup(w));
    seq.push_back(lm.eos());
    for (int k = 1; k <= order; ++k)
      for (size_t i = 0; i + k <= seq.size(); ++i)
        ++raw[k - 1][std::vector<WordId>(seq.begin() + i, seq.begin() + i + k)];
  }

  // Modified counts: raw at the top order and for n-grams starting with
  // <s>, continuation counts N1+(. g) elsewhere.
  std::vector<CountTable> counts(order);
  counts[order - 1] = raw[order - 1];
  for (int k = 1; k < order; ++k) {
    for (const auto &[g, c] : raw[k]) {
      std::vector<WordId> suffix(g.begin() + 1, g.end());
      ++counts[k - 1][suffix];
    }
    for (const auto &[g, c] : raw[k - 1])
      if (g.front() == bos) counts[k - 1][g] = c;
  }
  counts[0].erase(std::vector<WordId>{bos});

  std::vector<std::unordered_map<std::vector<WordId>, double, WordSeqHash>> prob(order);
  for (int k = 1; k <= order; ++k) {
    std::map<std::vector<WordId>, std::pair<int64_t, int64_t>> ctx_stats;
    for (const auto &[g, c] : counts[k - 1]) {
      auto &st = ctx_stats[std::vector<WordId>(g.begin(), g.end() - 1)];
      st.first += c;
      st.second += 1;
    }
    for (const auto &[g, c] : counts[k - 1]) {
      std::vector<WordId> h(g.begin(), g.end() - 1);
      const auto &[total, types] = ctx_stats.at(h);
      double gamma = discount * static_cast<double>(types) / total;
      double p = std::max(static_cast<double>(c) - discount, 0.0) / total;
      if (k == 1) {
        if (g.front() == lm.unk()) p += gamma;
      } else {
        std::vector<WordId> lower(g.begin() + 1, g.end());
        p += gamma * prob[k - 2].at(lower);
      }
      prob[k - 1][g] = p;
    }
    if (k == 1) {
      std::vector<WordId> unk{lm.unk()};
      if (!prob[0].count(unk)) {
        const auto &[total, types] = ctx_stats.at({});
        prob[0][unk] = discount * static_cast<double>(types) / total;
      }
    }
    for (const auto &[g, p] : prob[k - 1]) {
      NGramEntry e;
      e.log10_prob = ToLog10(p);
      lm.SetEntry(g, e);
    }
    if (k >= 2) {
      for (const auto &[h, st] : ctx_stats) {
        double gamma = discount * static_cast<double>(st.second) / st.first;
        NGramEntry e;
        if (const NGramEntry *existing = lm.Find(h)) e = *existing;
        e.log10_backoff = ToLog10(gamma);
        e.has_backoff = true;
        lm.SetEntry(h, e);
      }
    }
  }
  return lm;
}

PerplexityResult ComputePerplexity(
    const BackoffNGramLM &lm,
    const std::vector<std::vector<std::string>> &corpus) {
  PerplexityResult r;
  for (const auto &sent : corpus) {
    r.log10_prob += lm.ScoreSequence(sent);
    r.num_tokens += sent.size() + 1;
    for (const auto &w : sent)
      if (!lm.Contains(w)) ++r.num_oov;
  }
  if (r.num_tokens == 0)
    throw Error("EmptyCorpus", "perplexity corpus is empty");
  r.perplexity = std::pow(10.0, -r.log10_prob / static_cast<double>(r.num_tokens));
  return r;
}

BackoffNGramLM Interpolate(const BackoffNGramLM &a, const BackoffNGramLM &b,
                           double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error("BadWeight", "interpolation weight must be in [0, 1]");
  const int order = std::max(a.order(), b.order());
  BackoffNGramLM out(order);
  for (const auto &w : a.words()) out.AddWord(w);
  for (const auto &w : b.words()) out.AddWord(w);

  // Component probability of `w` after `hist` (ids in `out`); zero when the
  // component does not know w.
  auto component = [&out](const BackoffNGramLM &lm,
                          const std::vector<WordId> &hist, WordId w) {
    const std::string &word = out.Word(w);
    if (!lm.Contains(word)) return 0.0;
    std::vector<WordId> h;
    h.reserve(hist.size());
    for (WordId x : hist) h.push_back(lm.Lookup(out.Word(x)));
    return ToLinear(lm.LogProb(h, lm.Lookup(word)));
  };

  auto remap = [&out](const BackoffNGramLM &lm, const std::vector<WordId> &g) {
    std::vector<WordId> r;
    r.reserve(g.size());
    for (WordId x : g) r.push_back(out.Lookup(lm.Word(x)));
    return r;
  };

  std::vector<std::set<std::vector<WordId>>> keys(order);
  for (int n = 1; n <= order; ++n) {
    if (n <= a.order())
      for (const auto &kv : a.Table(n)) keys[n - 1].insert(remap(a, kv.first));
    if (n <= b.order())
      for (const auto &kv : b.Table(n)) keys[n - 1].insert(remap(b, kv.first));
  }
  // Every prefix of a stored n-gram is a context and must itself be stored.
  std::vector<std::set<std::vector<WordId>>> contexts(order);
  for (int n = order; n >= 2; --n) {
    for (const auto &g : keys[n - 1]) {
      std::vector<WordId> h(g.begin(), g.end() - 1);
      contexts[n - 2].insert(h);
      keys[n - 2].insert(h);
    }
  }

  for (int n = 1; n <= order; ++n) {
    for (const auto &g : keys[n - 1]) {
      std::vector<WordId> h(g.begin(), g.end() - 1);
      WordId w = g.back();
      NGramEntry e;
      if (w != out.bos()) {
        double p = lambda * component(a, h, w) +
                   (1.0 - lambda) * component(b, h, w);
        e.log10_prob = ToLog10(p);
      }
      out.SetEntry(g, e);
    }
  }

  for (int m = 1; m < order; ++m) {
    std::map<std::vector<WordId>, std::vector<WordId>> successors;
    for (const auto &g : keys[m])
      successors[std::vector<WordId>(g.begin(), g.end() - 1)].push_back(g.back());
    for (const auto &h : contexts[m - 1]) {
      std::vector<WordId> lower_hist(h.begin() + 1, h.end());
      double num = 1.0, den = 1.0;
      std::vector<WordId> key = h;
      key.push_back(0);
      for (WordId w : successors[h]) {
        if (w == out.bos()) continue;
        key.back() = w;
        num -= ToLinear(out.Find(key)->log10_prob);
        den -= ToLinear(out.LogProb(lower_hist, w));
      }
      NGramEntry e = *out.Find(h);
      e.has_backoff = true;
      if (den <= 1e-12) {
        e.log10_backoff = 0.0;
      } else {
        e.log10_backoff = ToLog10(std::max(num, 0.0) / den);
      }
      out.SetEntry(h, e);
    }
  }
  return out;
}

}  // namespace hasr
