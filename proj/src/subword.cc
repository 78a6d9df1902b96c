// src/subword.cc

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

#include "hasr/subword.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"
#include "hasr/util/utf8.h"

namespace hasr {

namespace {

using Pair = std::pair<std::string, std::string>;

struct TrainWord {
  std::vector<std::string> syms;
  int64_t count;
};

struct PairHashLocal {
  size_t operator()(const Pair &p) const {
    return std::hash<std::string>()(p.first) * 31 +
           std::hash<std::string>()(p.second);
  }
};

// True if `a` should be preferred over `b` at equal counts.
bool TieBreakLess(const Pair &a, const Pair &b) {
  std::string ca = a.first + a.second, cb = b.first + b.second;
  if (ca != cb) return ca < cb;
  return a.first < b.first;
}

// Merges every non-overlapping occurrence of `p`, scanning left to right.
bool ApplyMerge(std::vector<std::string> *syms, const Pair &p) {
  bool changed = false;
  std::vector<std::string> out;
  out.reserve(syms->size());
  for (size_t i = 0; i < syms->size(); ++i) {
    if (i + 1 < syms->size() && (*syms)[i] == p.first &&
        (*syms)[i + 1] == p.second) {
      out.push_back(p.first + p.second);
      ++i;
      changed = true;
    } else {
      out.push_back(std::move((*syms)[i]));
    }
  }
  *syms = std::move(out);
  return changed;
}

}  // namespace

SubwordModel SubwordModel::Train(
    const std::vector<std::vector<std::string>> &corpus, size_t vocab_size,
    const std::string &boundary) {
  std::map<std::string, int64_t> word_counts;
  for (const auto &utt : corpus)
    for (const auto &w : utt)
      if (!w.empty()) ++word_counts[w];
  if (word_counts.empty())
    throw Error("EmptyCorpus", "BPE training corpus has no words");

  std::set<std::string> base;
  std::vector<TrainWord> words;
  words.reserve(word_counts.size());
  for (const auto &[w, c] : word_counts) {
    TrainWord tw{SplitCodepoints(w), c};
    base.insert(tw.syms.begin(), tw.syms.end());
    words.push_back(std::move(tw));
  }
  if (vocab_size < base.size())
    throw Error("VocabTooSmall", "vocab_size " + std::to_string(vocab_size) +
                                     " is below the " +
                                     std::to_string(base.size()) +
                                     " base characters");

  SubwordModel model;
  model.vocab_size_ = vocab_size;
  model.boundary_ = boundary;
  model.inventory_.assign(base.begin(), base.end());
  model.inventory_set_.insert(base.begin(), base.end());

  std::unordered_map<Pair, int64_t, PairHashLocal> pair_counts;
  std::unordered_map<Pair, std::vector<size_t>, PairHashLocal> pair_words;
  auto add_pairs = [&](size_t idx, int64_t sign) {
    const TrainWord &w = words[idx];
    for (size_t i = 0; i + 1 < w.syms.size(); ++i) {
      Pair p{w.syms[i], w.syms[i + 1]};
      int64_t &c = pair_counts[p];
      c += sign * w.count;
      if (sign > 0) pair_words[p].push_back(idx);
      if (c == 0) pair_counts.erase(p);
    }
  };
  for (size_t i = 0; i < words.size(); ++i) add_pairs(i, +1);

  while (model.inventory_set_.size() < vocab_size) {
    const Pair *best = nullptr;
    int64_t best_count = 0;
    for (const auto &[p, c] : pair_counts) {
      if (c > best_count || (c == best_count && best && TieBreakLess(p, *best))) {
        best = &p;
        best_count = c;
      }
    }
    if (best == nullptr || best_count < 2) break;
    Pair merge = *best;
    model.merges_.push_back(merge);
    std::string unit = merge.first + merge.second;
    if (model.inventory_set_.insert(unit).second)
      model.inventory_.push_back(unit);

    std::vector<size_t> touched = std::move(pair_words[merge]);
    pair_words.erase(merge);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (size_t idx : touched) {
      std::vector<std::string> syms = words[idx].syms;
      if (!ApplyMerge(&syms, merge)) continue;
      add_pairs(idx, -1);
      words[idx].syms = std::move(syms);
      add_pairs(idx, +1);
    }
  }
  model.BuildIndex();
  return model;
}

void SubwordModel::BuildIndex() {
  merge_rank_.clear();
  for (size_t i = 0; i < merges_.size(); ++i)
    merge_rank_.emplace(merges_[i], i);  // first occurrence wins
  inventory_set_.clear();
  inventory_set_.insert(inventory_.begin(), inventory_.end());
}

std::vector<std::string> SubwordModel::EncodeWord(const std::string &word,
                                                  bool word_initial) const {
  std::vector<std::string> syms;
  for (std::string &c : SplitCodepoints(word))
    syms.push_back(inventory_set_.count(c) ? std::move(c) : std::string(kUnk));
  while (syms.size() > 1) {
    size_t best_rank = merges_.size();
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      auto it = merge_rank_.find({syms[i], syms[i + 1]});
      if (it != merge_rank_.end() && it->second < best_rank)
        best_rank = it->second;
    }
    if (best_rank == merges_.size()) break;
    ApplyMerge(&syms, merges_[best_rank]);
  }
  if (word_initial && !syms.empty()) syms.front() = boundary_ + syms.front();
  return syms;
}

std::vector<std::string> SubwordModel::Encode(
    const std::vector<std::string> &words) const {
  std::vector<std::string> units;
  for (const auto &w : words) {
    auto u = EncodeWord(w, true);
    units.insert(units.end(), u.begin(), u.end());
  }
  return units;
}

std::vector<std::string> SubwordModel::Decode(
    const std::vector<std::string> &units) const {
  std::vector<std::string> words;
  for (const auto &unit : units) {
    std::string bare = unit;
    bool initial = false;
    if (!boundary_.empty() && bare.compare(0, boundary_.size(), boundary_) == 0) {
      bare = bare.substr(boundary_.size());
      initial = true;
    }
    if (bare != kUnk && !inventory_set_.count(bare))
      throw Error("UnknownUnit", "unit '" + unit + "' is not in the inventory");
    if (initial || words.empty()) words.emplace_back();
    words.back() += bare;
  }
  return words;
}

void SubwordModel::Write(std::ostream &os) const {
  os << "bpe " << vocab_size_ << ' ' << boundary_ << ' ' << merges_.size()
     << ' ' << inventory_.size() << '\n';
  for (const auto &[l, r] : merges_) os << l << ' ' << r << '\n';
  for (const auto &u : inventory_) os << u << '\n';
}

void SubwordModel::Write(const std::string &path) const {
  AtomicWriteFile(path, [this](std::ostream &os) { Write(os); });
}

SubwordModel SubwordModel::Read(std::istream &is) {
  std::string line;
  auto fail = [](const std::string &msg) {
    return Error("BadModel", "subword model: " + msg);
  };
  if (!std::getline(is, line)) throw fail("empty file");
  auto header = SplitWhitespace(line);
  int64_t vocab, num_merges, num_inv;
  if (header.size() != 5 || header[0] != "bpe" || !ParseInt(header[1], &vocab) ||
      !ParseInt(header[3], &num_merges) || !ParseInt(header[4], &num_inv) ||
      vocab < 0 || num_merges < 0 || num_inv < 0)
    throw fail("bad header '" + line + "'");
  SubwordModel model;
  model.vocab_size_ = static_cast<size_t>(vocab);
  model.boundary_ = header[2];
  for (int64_t i = 0; i < num_merges; ++i) {
    if (!std::getline(is, line)) throw fail("truncated merge list");
    auto f = SplitWhitespace(line);
    if (f.size() != 2) throw fail("bad merge line '" + line + "'");
    model.merges_.emplace_back(f[0], f[1]);
  }
  for (int64_t i = 0; i < num_inv; ++i) {
    if (!std::getline(is, line)) throw fail("truncated inventory");
    auto f = SplitWhitespace(line);
    if (f.size() != 1) throw fail("bad inventory line '" + line + "'");
    model.inventory_.push_back(f[0]);
  }
  model.BuildIndex();
  return model;
}

SubwordModel SubwordModel::Read(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return Read(is);
}

}  // namespace hasr
