// src/fst-algo.cc

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

#include "hasr/fst-algo.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <unordered_map>

#include "hasr/error.h"

namespace hasr {

namespace {

uint64_t PairKey(StateId a, StateId b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

bool IsEpsilonArc(const Arc &a) {
  return a.ilabel == kEpsilon && a.olabel == kEpsilon;
}

// Relabels b's input labels into a's output label space.
std::vector<Label> BuildRelabelMap(const WeightedFst &a, const WeightedFst &b) {
  const auto &aout = a.OutputSymbols();
  const auto &bin = b.InputSymbols();
  if (!aout || !bin || aout == bin || *aout == *bin) return {};
  std::vector<Label> map(bin->Size(), -1);
  map[kEpsilon] = kEpsilon;
  for (Label i = 1; i < static_cast<Label>(bin->Size()); ++i) {
    map[i] = aout->Find(bin->Symbol(i));  // -1 never matches
  }
  return map;
}

}  // namespace

WeightedFst Compose(const WeightedFst &a, const WeightedFst &b) {
  WeightedFst out;
  out.SetInputSymbols(a.InputSymbols());
  out.SetOutputSymbols(b.OutputSymbols());
  if (a.Start() == kNoState || b.Start() == kNoState) return out;

  std::vector<Label> relabel = BuildRelabelMap(a, b);
  // b's arcs per state, relabeled and sorted by input label.
  std::vector<std::vector<Arc>> barcs(b.NumStates());
  for (StateId q = 0; q < b.NumStates(); ++q) {
    barcs[q] = b.Arcs(q);
    if (!relabel.empty())
      for (Arc &arc : barcs[q]) arc.ilabel = relabel.at(arc.ilabel);
    std::stable_sort(barcs[q].begin(), barcs[q].end(),
                     [](const Arc &x, const Arc &y) { return x.ilabel < y.ilabel; });
  }

  std::unordered_map<uint64_t, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto get_state = [&](StateId p, StateId q) {
    auto [it, inserted] = ids.emplace(PairKey(p, q), out.NumStates());
    if (inserted) {
      out.AddState();
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  out.SetStart(get_state(a.Start(), b.Start()));
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    const StateId s = static_cast<StateId>(i);
    if (a.IsFinal(p) && b.IsFinal(q))
      out.SetFinal(s, Tropical::Times(a.Final(p), b.Final(q)));
    const auto &bq = barcs[q];
    for (const Arc &ea : a.Arcs(p)) {
      if (ea.olabel == kEpsilon) {
        StateId t = get_state(ea.nextstate, q);
        out.AddArc(s, Arc{ea.ilabel, kEpsilon, ea.weight, t});
        continue;
      }
      auto lo = std::lower_bound(
          bq.begin(), bq.end(), ea.olabel,
          [](const Arc &x, Label l) { return x.ilabel < l; });
      for (auto it = lo; it != bq.end() && it->ilabel == ea.olabel; ++it) {
        StateId t = get_state(ea.nextstate, it->nextstate);
        out.AddArc(s, Arc{ea.ilabel, it->olabel,
                          Tropical::Times(ea.weight, it->weight), t});
      }
    }
    auto eps = std::lower_bound(
        bq.begin(), bq.end(), kEpsilon,
        [](const Arc &x, Label l) { return x.ilabel < l; });
    for (auto it = eps; it != bq.end() && it->ilabel == kEpsilon; ++it) {
      StateId t = get_state(p, it->nextstate);
      out.AddArc(s, Arc{kEpsilon, it->olabel, it->weight, t});
    }
  }
  return out;
}

WeightedFst RemoveEpsilon(const WeightedFst &fst) {
  WeightedFst out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  const StateId n = fst.NumStates();
  for (StateId s = 0; s < n; ++s) out.AddState();
  out.SetStart(fst.Start());

  std::vector<double> dist(n, Tropical::Zero());
  std::vector<char> queued(n, 0);
  std::vector<StateId> touched;
  for (StateId p = 0; p < n; ++p) {
    touched.clear();
    std::deque<StateId> queue{p};
    dist[p] = Tropical::One();
    queued[p] = 1;
    touched.push_back(p);
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      queued[q] = 0;
      for (const Arc &arc : fst.Arcs(q)) {
        if (!IsEpsilonArc(arc)) continue;
        double d = Tropical::Times(dist[q], arc.weight);
        if (d < dist[arc.nextstate]) {
          if (Tropical::IsZero(dist[arc.nextstate])) touched.push_back(arc.nextstate);
          dist[arc.nextstate] = d;
          if (!queued[arc.nextstate]) {
            queued[arc.nextstate] = 1;
            queue.push_back(arc.nextstate);
          }
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    double final_weight = Tropical::Zero();
    std::map<std::tuple<Label, Label, StateId>, size_t> index;
    std::vector<Arc> &arcs = out.MutableArcs(p);
    for (StateId q : touched) {
      if (fst.IsFinal(q))
        final_weight = Tropical::Plus(final_weight,
                                      Tropical::Times(dist[q], fst.Final(q)));
      for (const Arc &arc : fst.Arcs(q)) {
        if (IsEpsilonArc(arc)) continue;
        double w = Tropical::Times(dist[q], arc.weight);
        auto key = std::make_tuple(arc.ilabel, arc.olabel, arc.nextstate);
        auto it = index.find(key);
        if (it == index.end()) {
          index.emplace(key, arcs.size());
          arcs.push_back(Arc{arc.ilabel, arc.olabel, w, arc.nextstate});
        } else {
          arcs[it->second].weight = Tropical::Plus(arcs[it->second].weight, w);
        }
      }
    }
    out.SetFinal(p, final_weight);
    for (StateId q : touched) dist[q] = Tropical::Zero();
  }
  return out;
}

WeightedFst Determinize(const WeightedFst &fst, double max_state_factor) {
  const WeightedFst in = RemoveEpsilon(fst);
  WeightedFst out;
  out.SetInputSymbols(in.InputSymbols());
  out.SetOutputSymbols(in.OutputSymbols());
  if (in.Start() == kNoState) return out;

  constexpr double kQuantum = 1e-10;
  using Subset = std::vector<std::pair<StateId, double>>;
  using SubsetKey = std::vector<std::pair<StateId, int64_t>>;
  struct KeyHash {
    size_t operator()(const SubsetKey &k) const {
      size_t h = k.size();
      for (const auto &[s, r] : k)
        h = (h * 1000003u) ^ (static_cast<size_t>(s) * 7919u) ^ static_cast<size_t>(r);
      return h;
    }
  };
  const size_t budget = static_cast<size_t>(
      max_state_factor * std::max<StateId>(1, in.NumStates()));

  std::unordered_map<SubsetKey, StateId, KeyHash> ids;
  std::vector<Subset> subsets;
  auto get_state = [&](Subset subset) {
    SubsetKey key;
    key.reserve(subset.size());
    for (const auto &[s, r] : subset) key.emplace_back(s, std::llround(r / kQuantum));
    auto [it, inserted] = ids.emplace(std::move(key), out.NumStates());
    if (inserted) {
      if (static_cast<size_t>(out.NumStates()) >= budget)
        throw Error("DeterminizeBlowup",
                    "determinization exceeded " + std::to_string(budget) + " states");
      out.AddState();
      subsets.push_back(std::move(subset));
    }
    return it->second;
  };
  out.SetStart(get_state(Subset{{in.Start(), 0.0}}));

  for (size_t i = 0; i < subsets.size(); ++i) {
    const Subset subset = subsets[i];
    const StateId s = static_cast<StateId>(i);
    double final_weight = Tropical::Zero();
    std::map<std::pair<Label, Label>, std::map<StateId, double>> moves;
    for (const auto &[q, residual] : subset) {
      if (in.IsFinal(q))
        final_weight = Tropical::Plus(final_weight, Tropical::Times(residual, in.Final(q)));
      for (const Arc &arc : in.Arcs(q)) {
        auto &dests = moves[{arc.ilabel, arc.olabel}];
        double w = Tropical::Times(residual, arc.weight);
        auto [it, inserted] = dests.emplace(arc.nextstate, w);
        if (!inserted) it->second = Tropical::Plus(it->second, w);
      }
    }
    out.SetFinal(s, final_weight);
    for (const auto &[labels, dests] : moves) {
      double best = Tropical::Zero();
      for (const auto &[d, w] : dests) best = Tropical::Plus(best, w);
      Subset next;
      next.reserve(dests.size());
      for (const auto &[d, w] : dests) next.emplace_back(d, w - best);
      StateId t = get_state(std::move(next));
      out.AddArc(s, Arc{labels.first, labels.second, best, t});
    }
  }
  return out;
}

WeightedFst Connect(const WeightedFst &fst) {
  WeightedFst out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  const StateId n = fst.NumStates();
  if (fst.Start() == kNoState || n == 0) return out;

  std::vector<char> access(n, 0), coaccess(n, 0);
  std::vector<StateId> stack{fst.Start()};
  access[fst.Start()] = 1;
  std::vector<std::vector<StateId>> reverse(n);
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &a : fst.Arcs(s)) {
      reverse[a.nextstate].push_back(s);
      if (!access[a.nextstate]) {
        access[a.nextstate] = 1;
        stack.push_back(a.nextstate);
      }
    }
  }
  for (StateId s = 0; s < n; ++s)
    if (access[s] && fst.IsFinal(s)) {
      coaccess[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s])
      if (!coaccess[p]) {
        coaccess[p] = 1;
        stack.push_back(p);
      }
  }
  if (!coaccess[fst.Start()]) return out;

  std::vector<StateId> remap(n, kNoState);
  for (StateId s = 0; s < n; ++s)
    if (access[s] && coaccess[s]) remap[s] = out.AddState();
  out.SetStart(remap[fst.Start()]);
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoState) continue;
    out.SetFinal(remap[s], fst.Final(s));
    for (const Arc &a : fst.Arcs(s))
      if (remap[a.nextstate] != kNoState)
        out.AddArc(remap[s], Arc{a.ilabel, a.olabel, a.weight, remap[a.nextstate]});
  }
  return out;
}

WeightedFst IdentityFst(Label max_label) {
  WeightedFst fst;
  StateId s = fst.AddState();
  fst.SetStart(s);
  fst.SetFinal(s, Tropical::One());
  for (Label l = 1; l <= max_label; ++l) fst.AddArc(s, Arc{l, l, 0.0, s});
  return fst;
}

bool ShortestPath(const WeightedFst &fst, BestPath *out) {
  const StateId n = fst.NumStates();
  if (fst.Start() == kNoState || n == 0) return false;
  std::vector<double> dist(n, Tropical::Zero());
  std::vector<std::pair<StateId, size_t>> back(n, {kNoState, 0});
  std::vector<char> queued(n, 0);
  std::deque<StateId> queue{fst.Start()};
  dist[fst.Start()] = 0.0;
  queued[fst.Start()] = 1;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    queued[s] = 0;
    const auto &arcs = fst.Arcs(s);
    for (size_t i = 0; i < arcs.size(); ++i) {
      double d = dist[s] + arcs[i].weight;
      StateId t = arcs[i].nextstate;
      if (d < dist[t]) {
        dist[t] = d;
        back[t] = {s, i};
        if (!queued[t]) {
          queued[t] = 1;
          queue.push_back(t);
        }
      }
    }
  }
  StateId best = kNoState;
  double best_cost = Tropical::Zero();
  for (StateId s = 0; s < n; ++s) {
    if (!fst.IsFinal(s) || Tropical::IsZero(dist[s])) continue;
    double c = dist[s] + fst.Final(s);
    if (c < best_cost) {
      best_cost = c;
      best = s;
    }
  }
  if (best == kNoState) return false;
  out->cost = best_cost;
  out->ilabels.clear();
  out->olabels.clear();
  for (StateId s = best; s != fst.Start();) {
    auto [p, i] = back[s];
    const Arc &a = fst.Arcs(p)[i];
    if (a.ilabel != kEpsilon) out->ilabels.push_back(a.ilabel);
    if (a.olabel != kEpsilon) out->olabels.push_back(a.olabel);
    s = p;
  }
  std::reverse(out->ilabels.begin(), out->ilabels.end());
  std::reverse(out->olabels.begin(), out->olabels.end());
  return true;
}

}  // namespace hasr
