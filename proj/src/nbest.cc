// src/nbest.cc

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

#include "hasr/nbest.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "hasr/error.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"

namespace hasr {

namespace {

// Word-prefix trie shared by all partial hypotheses.
struct PrefixNode {
  int32_t parent;
  Label word;
  int32_t frame;
};

struct Hyp {
  double f;       // g + heuristic
  double g;
  double am, lm;
  int32_t state;  // lattice state, or -1 for a completed path
  int32_t prefix;
  int64_t seq;    // insertion order, breaks ties
  bool operator>(const Hyp &o) const {
    if (f != o.f) return f > o.f;
    return seq > o.seq;
  }
};

}  // namespace

std::vector<NBestEntry> NBest(const Lattice &lat, size_t n) {
  if (n == 0) throw Error("BadN", "n-best size must be at least 1");
  std::vector<NBestEntry> out;
  const int32_t num_states = lat.NumStates();
  if (num_states == 0) return out;

  // Exact cost-to-go makes the search settle each (state, prefix) once.
  std::vector<double> beta(num_states, Tropical::Zero());
  for (int32_t s = num_states; s-- > 0;) {
    if (lat.IsFinal(s)) beta[s] = lat.Final(s).first + lat.Final(s).second;
    for (const auto &a : lat.Arcs(s))
      beta[s] = std::min(beta[s], (a.am + a.lm) + beta[a.nextstate]);
  }
  if (Tropical::IsZero(beta[0])) return out;

  std::vector<PrefixNode> nodes{{-1, kEpsilon, 0}};
  std::map<std::pair<int32_t, Label>, int32_t> children;
  std::set<std::pair<int32_t, int32_t>> settled;
  std::unordered_set<int32_t> emitted;
  std::priority_queue<Hyp, std::vector<Hyp>, std::greater<>> queue;
  int64_t seq = 0;
  queue.push(Hyp{beta[0], 0.0, 0.0, 0.0, 0, 0, seq++});

  while (!queue.empty() && out.size() < n) {
    Hyp h = queue.top();
    queue.pop();
    if (h.state < 0) {
      if (!emitted.insert(h.prefix).second) continue;
      NBestEntry e;
      for (int32_t p = h.prefix; p > 0; p = nodes[p].parent) {
        e.words.push_back(lat.WordString(nodes[p].word));
        e.word_frames.push_back(nodes[p].frame);
      }
      std::reverse(e.words.begin(), e.words.end());
      std::reverse(e.word_frames.begin(), e.word_frames.end());
      e.am_cost = h.am;
      e.lm_cost = h.lm;
      e.total = h.g;
      out.push_back(std::move(e));
      continue;
    }
    if (!settled.insert({h.state, h.prefix}).second) continue;
    if (lat.IsFinal(h.state) && !emitted.count(h.prefix)) {
      const auto &fw = lat.Final(h.state);
      const double g = h.g + (fw.first + fw.second);
      queue.push(Hyp{g, g, h.am + fw.first, h.lm + fw.second, -1, h.prefix, seq++});
    }
    for (const auto &a : lat.Arcs(h.state)) {
      if (Tropical::IsZero(beta[a.nextstate])) continue;
      int32_t prefix = h.prefix;
      if (a.word != kEpsilon) {
        auto [it, added] = children.try_emplace({h.prefix, a.word},
                                                static_cast<int32_t>(nodes.size()));
        if (added) nodes.push_back({h.prefix, a.word, lat.Frame(h.state)});
        prefix = it->second;
      }
      if (settled.count({a.nextstate, prefix})) continue;
      const double g = h.g + (a.am + a.lm);
      queue.push(Hyp{g + beta[a.nextstate], g, h.am + a.am, h.lm + a.lm, a.nextstate,
                     prefix, seq++});
    }
  }
  return out;
}

void WriteNBest(const std::vector<std::pair<std::string, std::vector<NBestEntry>>> &lists,
                std::ostream &os) {
  for (const auto &[id, entries] : lists)
    for (size_t r = 0; r < entries.size(); ++r) {
      os << id << ' ' << r + 1 << ' ' << FormatDouble(entries[r].am_cost) << ' '
         << FormatDouble(entries[r].lm_cost);
      for (const auto &w : entries[r].words) os << ' ' << w;
      os << '\n';
    }
}

void WriteNBest(const std::vector<std::pair<std::string, std::vector<NBestEntry>>> &lists,
                const std::string &path) {
  AtomicWriteFile(path, [&lists](std::ostream &os) { WriteNBest(lists, os); });
}

std::vector<std::pair<std::string, std::vector<NBestEntry>>> ReadNBest(std::istream &is) {
  std::vector<std::pair<std::string, std::vector<NBestEntry>>> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    NBestEntry e;
    int64_t rank;
    if (f.size() < 4 || !ParseInt(f[1], &rank) || !ParseDouble(f[2], &e.am_cost) ||
        !ParseDouble(f[3], &e.lm_cost))
      throw Error("BadNBest", "line " + std::to_string(line_no) +
                                  ": expected 'utt-id rank am_cost lm_cost words...'");
    e.words.assign(f.begin() + 4, f.end());
    e.total = e.am_cost + e.lm_cost;
    if (out.empty() || out.back().first != f[0]) out.emplace_back(f[0], std::vector<NBestEntry>{});
    out.back().second.push_back(std::move(e));
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<NBestEntry>>> ReadNBest(
    const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("MissingPath", "cannot open " + path);
  return ReadNBest(is);
}

}  // namespace hasr
