// src/decoder.cc

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

#include "hasr/decoder.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <unordered_map>

#include "hasr/error.h"

namespace hasr {

void DecodeConfig::Validate() const {
  if (!(beam > 0.0))
    throw Error("BadConfig", "beam must be positive");
  if (max_active < 1)
    throw Error("BadConfig", "max_active must be positive");
  if (!(lattice_beam >= 0.0) || lattice_beam > beam)
    throw Error("BadConfig", "lattice_beam must lie in [0, beam]");
  if (!std::isfinite(acoustic_scale) || acoustic_scale < 0.0)
    throw Error("BadConfig", "acoustic_scale must be finite and non-negative");
}

namespace {

struct Link {
  int32_t src;  // token index
  Label ilabel;
  Label olabel;
  double am;
  double lm;
};

struct Token {
  StateId state;
  int32_t frame;
  double cost;
  Link best;
  bool alive = true;
  std::vector<Link> in;
};

class BeamSearch {
 public:
  BeamSearch(const WeightedFst &graph, const Posteriorgram &pg,
             const DecodeConfig &cfg)
      : graph_(graph), pg_(pg), cfg_(cfg),
        state_token_(graph.NumStates(), -1) {}

  DecodeResult Run();

 private:
  int32_t FindOrAdd(StateId s, int32_t frame, double cost, const Link &via,
                    std::vector<int32_t> *active, bool *improved);
  void EpsilonClosure(std::vector<int32_t> *active, int32_t frame);
  void Prune(std::vector<int32_t> *active);
  void ClearIndex(const std::vector<int32_t> &active);
  std::vector<int32_t> FrameOrder(const std::vector<int32_t> &active) const;
  void BuildLattice(const std::vector<std::vector<int32_t>> &frames,
                    const std::vector<double> &final_cost, DecodeResult *res);

  const WeightedFst &graph_;
  const Posteriorgram &pg_;
  const DecodeConfig &cfg_;
  std::vector<Token> tokens_;
  std::vector<int32_t> state_token_;
};

int32_t BeamSearch::FindOrAdd(StateId s, int32_t frame, double cost, const Link &via,
                              std::vector<int32_t> *active, bool *improved) {
  int32_t id = state_token_[s];
  if (id < 0) {
    id = static_cast<int32_t>(tokens_.size());
    tokens_.push_back(Token{s, frame, cost, via, true, {}});
    state_token_[s] = id;
    active->push_back(id);
    *improved = true;
  } else if (cost < tokens_[id].cost) {
    tokens_[id].cost = cost;
    tokens_[id].best = via;
    *improved = true;
  } else {
    *improved = false;
  }
  return id;
}

void BeamSearch::EpsilonClosure(std::vector<int32_t> *active, int32_t frame) {
  std::deque<int32_t> queue(active->begin(), active->end());
  std::vector<char> queued(tokens_.size(), 1);
  while (!queue.empty()) {
    int32_t id = queue.front();
    queue.pop_front();
    queued[id] = 0;
    const StateId s = tokens_[id].state;
    for (const Arc &arc : graph_.Arcs(s)) {
      if (arc.ilabel != kEpsilon) continue;
      const double cand = tokens_[id].cost + arc.weight;
      bool improved;
      int32_t t = FindOrAdd(arc.nextstate, frame, cand,
                            Link{id, kEpsilon, arc.olabel, 0.0, arc.weight}, active,
                            &improved);
      if (static_cast<size_t>(t) >= queued.size()) queued.resize(t + 1, 0);
      if (improved && !queued[t]) {
        queued[t] = 1;
        queue.push_back(t);
      }
    }
  }
  // All epsilon links, now that the token set is fixed.
  for (int32_t id : *active) {
    for (const Arc &arc : graph_.Arcs(tokens_[id].state)) {
      if (arc.ilabel != kEpsilon) continue;
      tokens_[state_token_[arc.nextstate]].in.push_back(
          Link{id, kEpsilon, arc.olabel, 0.0, arc.weight});
    }
  }
}

void BeamSearch::Prune(std::vector<int32_t> *active) {
  if (active->empty()) return;
  double best = Tropical::Zero();
  for (int32_t id : *active) best = std::min(best, tokens_[id].cost);
  const double cutoff = best + cfg_.beam;
  std::vector<int32_t> keep;
  keep.reserve(active->size());
  for (int32_t id : *active) {
    if (tokens_[id].cost <= cutoff) keep.push_back(id);
    else tokens_[id].alive = false;
  }
  if (static_cast<int64_t>(keep.size()) > cfg_.max_active) {
    auto by_cost = [this](int32_t a, int32_t b) {
      if (tokens_[a].cost != tokens_[b].cost) return tokens_[a].cost < tokens_[b].cost;
      return tokens_[a].state < tokens_[b].state;
    };
    std::nth_element(keep.begin(), keep.begin() + cfg_.max_active, keep.end(), by_cost);
    for (size_t i = cfg_.max_active; i < keep.size(); ++i) tokens_[keep[i]].alive = false;
    keep.resize(cfg_.max_active);
  }
  // Revive same-frame best predecessors so that every survivor keeps a
  // complete Viterbi path.
  const int32_t frame = tokens_[active->front()].frame;
  for (size_t i = 0; i < keep.size(); ++i) {
    int32_t src = tokens_[keep[i]].best.src;
    if (src >= 0 && tokens_[src].frame == frame && !tokens_[src].alive) {
      tokens_[src].alive = true;
      keep.push_back(src);
    }
  }
  std::sort(keep.begin(), keep.end(),
            [this](int32_t a, int32_t b) { return tokens_[a].state < tokens_[b].state; });
  for (int32_t id : *active)
    if (!tokens_[id].alive) state_token_[tokens_[id].state] = -1;
  for (int32_t id : keep) {
    auto &in = tokens_[id].in;
    in.erase(std::remove_if(in.begin(), in.end(),
                            [this](const Link &l) { return !tokens_[l.src].alive; }),
             in.end());
  }
  *active = std::move(keep);
}

void BeamSearch::ClearIndex(const std::vector<int32_t> &active) {
  for (int32_t id : active) state_token_[tokens_[id].state] = -1;
}

// Topological order of one frame's tokens over their epsilon links; tokens
// on epsilon cycles come last, by cost.
std::vector<int32_t> BeamSearch::FrameOrder(const std::vector<int32_t> &active) const {
  std::unordered_map<int32_t, int32_t> indeg;
  std::unordered_map<int32_t, std::vector<int32_t>> succ;
  for (int32_t id : active) indeg[id] = 0;
  for (int32_t id : active)
    for (const Link &l : tokens_[id].in)
      if (tokens_[l.src].frame == tokens_[id].frame) {
        ++indeg[id];
        succ[l.src].push_back(id);
      }
  std::priority_queue<std::pair<StateId, int32_t>, std::vector<std::pair<StateId, int32_t>>,
                      std::greater<>>
      ready;
  for (int32_t id : active)
    if (indeg[id] == 0) ready.push({tokens_[id].state, id});
  std::vector<int32_t> order;
  while (!ready.empty()) {
    int32_t id = ready.top().second;
    ready.pop();
    order.push_back(id);
    for (int32_t t : succ[id])
      if (--indeg[t] == 0) ready.push({tokens_[t].state, t});
  }
  if (order.size() < active.size()) {
    std::vector<int32_t> rest;
    for (int32_t id : active)
      if (indeg[id] > 0) rest.push_back(id);
    std::sort(rest.begin(), rest.end(), [this](int32_t a, int32_t b) {
      if (tokens_[a].cost != tokens_[b].cost) return tokens_[a].cost < tokens_[b].cost;
      return tokens_[a].state < tokens_[b].state;
    });
    order.insert(order.end(), rest.begin(), rest.end());
  }
  return order;
}

void BeamSearch::BuildLattice(const std::vector<std::vector<int32_t>> &frames,
                              const std::vector<double> &final_cost,
                              DecodeResult *res) {
  // Order all surviving tokens; the start token leads.
  std::vector<int32_t> order;
  for (size_t f = 0; f < frames.size(); ++f) {
    auto fo = FrameOrder(frames[f]);
    if (f == 0) {
      auto it = std::find(fo.begin(), fo.end(), 0);
      std::rotate(fo.begin(), it, it + 1);
    }
    order.insert(order.end(), fo.begin(), fo.end());
  }
  std::unordered_map<int32_t, int32_t> pos;
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int32_t>(i);
  const size_t n = order.size();
  auto usable = [&](const Link &l, int32_t dst) {
    auto it = pos.find(l.src);
    return it != pos.end() && it->second < pos.at(dst);
  };

  std::vector<double> alpha(n, Tropical::Zero()), beta(n, Tropical::Zero());
  alpha[0] = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (const Link &l : tokens_[order[i]].in)
      if (usable(l, order[i]))
        alpha[i] = std::min(alpha[i], alpha[pos[l.src]] + (l.am + l.lm));
  const std::vector<int32_t> &last = frames.back();
  double best = Tropical::Zero();
  for (size_t k = 0; k < last.size(); ++k) {
    const int32_t i = pos[last[k]];
    beta[i] = final_cost[k];
    best = std::min(best, alpha[i] + final_cost[k]);
  }
  for (size_t i = n; i-- > 0;)
    for (const Link &l : tokens_[order[i]].in)
      if (usable(l, order[i])) {
        const int32_t j = pos[l.src];
        beta[j] = std::min(beta[j], (l.am + l.lm) + beta[i]);
      }

  const double limit = best + cfg_.lattice_beam + 1e-7 * (1.0 + std::fabs(best));
  std::vector<int32_t> lat_state(n, -1);
  Lattice &lat = res->lattice;
  lat.SetWords(graph_.OutputSymbols());
  for (size_t i = 0; i < n; ++i)
    if (alpha[i] + beta[i] <= limit) lat_state[i] = lat.AddState(tokens_[order[i]].frame);
  for (size_t i = 0; i < n; ++i) {
    if (lat_state[i] < 0) continue;
    for (const Link &l : tokens_[order[i]].in) {
      if (!usable(l, order[i])) continue;
      const int32_t j = pos[l.src];
      if (lat_state[j] < 0 || alpha[j] + (l.am + l.lm) + beta[i] > limit) continue;
      lat.AddArc(lat_state[j], LatticeArc{l.olabel, l.am, l.lm, lat_state[i]});
    }
  }
  for (size_t k = 0; k < last.size(); ++k) {
    const int32_t i = pos[last[k]];
    if (lat_state[i] >= 0 && alpha[i] + final_cost[k] <= limit)
      lat.SetFinal(lat_state[i], 0.0, final_cost[k]);
  }
}

DecodeResult BeamSearch::Run() {
  const StateId start = graph_.Start();
  if (start == kNoState || graph_.NumStates() == 0)
    throw Error("EmptyGraph", "decoding graph has no start state");
  const double scale = cfg_.acoustic_scale;

  std::vector<std::vector<int32_t>> frames(1);
  bool dummy;
  FindOrAdd(start, 0, 0.0, Link{-1, kEpsilon, kEpsilon, 0.0, 0.0}, &frames[0], &dummy);
  EpsilonClosure(&frames[0], 0);
  Prune(&frames[0]);

  for (int32_t t = 0; t < pg_.num_frames; ++t) {
    std::vector<int32_t> cur = frames.back();
    ClearIndex(cur);
    std::vector<int32_t> next;
    for (int32_t id : cur) {
      const StateId s = tokens_[id].state;
      for (const Arc &arc : graph_.Arcs(s)) {
        if (arc.ilabel == kEpsilon) continue;
        const double am = -(scale * static_cast<double>(pg_(t, arc.ilabel - 1)));
        const double cand = (tokens_[id].cost + arc.weight) + am;
        const Link link{id, arc.ilabel, arc.olabel, am, arc.weight};
        bool improved;
        int32_t dst = FindOrAdd(arc.nextstate, t + 1, cand, link, &next, &improved);
        tokens_[dst].in.push_back(link);
      }
    }
    if (next.empty())
      throw Error("DecodeDeadEnd", pg_.utt_id + ": no path consumes frame " +
                                       std::to_string(t));
    EpsilonClosure(&next, t + 1);
    Prune(&next);
    if (next.empty())
      throw Error("DecodeDeadEnd", pg_.utt_id + ": all tokens pruned at frame " +
                                       std::to_string(t));
    frames.push_back(std::move(next));
  }

  DecodeResult res;
  const std::vector<int32_t> &last = frames.back();
  int32_t best_tok = -1;
  double best_total = Tropical::Zero();
  for (int32_t id : last) {
    const StateId s = tokens_[id].state;
    if (!graph_.IsFinal(s)) continue;
    const double total = tokens_[id].cost + graph_.Final(s);
    if (best_tok < 0 || total < best_total) {
      best_tok = id;
      best_total = total;
    }
  }
  std::vector<double> final_cost(last.size(), Tropical::Zero());
  if (best_tok >= 0) {
    for (size_t k = 0; k < last.size(); ++k)
      final_cost[k] = graph_.Final(tokens_[last[k]].state);
  } else {
    res.forced_final = true;
    for (size_t k = 0; k < last.size(); ++k) {
      final_cost[k] = 0.0;
      if (best_tok < 0 || tokens_[last[k]].cost < best_total) {
        best_tok = last[k];
        best_total = tokens_[last[k]].cost;
      }
    }
  }
  res.cost = best_total;

  std::vector<Link> path;
  for (int32_t id = best_tok; tokens_[id].best.src >= 0; id = tokens_[id].best.src)
    path.push_back(tokens_[id].best);
  std::reverse(path.begin(), path.end());
  res.lm_cost = res.forced_final ? 0.0 : graph_.Final(tokens_[best_tok].state);
  std::vector<int32_t> word_frames;
  for (const Link &l : path) {
    res.am_cost += l.am;
    res.lm_cost += l.lm;
    if (l.ilabel != kEpsilon) res.alignment.push_back(l.ilabel);
    if (l.olabel != kEpsilon) {
      res.words.push_back(l.olabel);
      word_frames.push_back(tokens_[l.src].frame);
    }
  }
  const auto words_str = WordStrings(graph_, res.words);
  const int32_t num_frames = pg_.num_frames;
  auto is_sil = [&](int32_t f) {
    return cfg_.silence_labels.count(res.alignment[f]) > 0;
  };
  for (size_t i = 0; i < res.words.size(); ++i) {
    int32_t b = word_frames[i];
    int32_t e = i + 1 < res.words.size() ? word_frames[i + 1] : num_frames;
    while (b < e && is_sil(b)) ++b;
    while (e > b && is_sil(e - 1)) --e;
    res.timings.push_back(WordTiming{words_str[i], b, e});
  }

  BuildLattice(frames, final_cost, &res);
  return res;
}

}  // namespace

DecodeResult Decode(const WeightedFst &graph, const Posteriorgram &pg,
                    const DecodeConfig &cfg) {
  cfg.Validate();
  pg.Validate();
  if (graph.MaxInputLabel() > pg.num_classes)
    throw Error("ClassMismatch", pg.utt_id + ": graph uses class label " +
                                     std::to_string(graph.MaxInputLabel()) +
                                     " but the posteriorgram has " +
                                     std::to_string(pg.num_classes) + " columns");
  BeamSearch search(graph, pg, cfg);
  return search.Run();
}

std::vector<std::string> WordStrings(const WeightedFst &graph,
                                     const std::vector<Label> &words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  const auto &syms = graph.OutputSymbols();
  for (Label w : words)
    out.push_back(syms && static_cast<size_t>(w) < syms->Size() ? syms->Symbol(w)
                                                                 : std::to_string(w));
  return out;
}

}  // namespace hasr
