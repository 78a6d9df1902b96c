// include/hasr/fst-algo.h

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

#ifndef HASR_FST_ALGO_H_
#define HASR_FST_ALGO_H_

#include "hasr/fst.h"

namespace hasr {

/// Composition over the tropical semiring. Output labels of `a` are matched
/// against input labels of `b`; when both carry symbol tables that differ,
/// `b`'s input labels are relabeled through their symbol strings and arcs
/// of `b` whose symbol `a` lacks can never match.
/// Epsilons are handled without a filter: redundant epsilon interleavings
/// may produce parallel paths of equal weight, which min-plus absorbs.
WeightedFst Compose(const WeightedFst &a, const WeightedFst &b);

/// Removes arcs with both labels epsilon. Epsilon closures are computed
/// with label-correcting shortest distance, so negative epsilon weights are
/// fine as long as there is no negative epsilon cycle.
WeightedFst RemoveEpsilon(const WeightedFst &fst);

/// Weighted subset construction over (ilabel, olabel) pairs, after epsilon
/// removal. Preserves the weight of every aligned label-pair sequence.
/// Throws Error("DeterminizeBlowup") once the output exceeds
/// `max_state_factor` times the input state count.
WeightedFst Determinize(const WeightedFst &fst, double max_state_factor = 100.0);

/// Keeps only states that are reachable from the start and can reach a
/// final state. An FST with no successful path becomes empty.
WeightedFst Connect(const WeightedFst &fst);

/// Identity transducer over the labels 1..max_label (single state).
WeightedFst IdentityFst(Label max_label);

/// Cost and label sequences of the lowest-cost successful path. Returns
/// false if there is none. Ties go to the lower arc index.
struct BestPath {
  double cost = Tropical::Zero();
  std::vector<Label> ilabels;  // epsilons dropped
  std::vector<Label> olabels;  // epsilons dropped
};
bool ShortestPath(const WeightedFst &fst, BestPath *out);

}  // namespace hasr

#endif  // HASR_FST_ALGO_H_
