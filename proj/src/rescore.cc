// src/rescore.cc

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

#include "hasr/rescore.h"

#include <algorithm>
#include <cmath>

#include "hasr/error.h"

namespace hasr {

double NGramScorer::Cost(const std::vector<std::string> &words) const {
  return -lm_.ScoreSequence(words) * std::log(10.0);
}

std::vector<NBestEntry> RescoreNBest(std::vector<NBestEntry> entries,
                                     const SentenceScorer &scorer, double lm_scale,
                                     double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error("BadWeight", "interpolation weight must lie in [0, 1]");
  if (!(lm_scale >= 0.0) || !std::isfinite(lm_scale))
    throw Error("BadWeight", "lm_scale must be finite and non-negative");
  if (entries.empty()) throw Error("EmptyNBest", "nothing to rescore");
  for (auto &e : entries) {
    const double new_cost = lambda > 0.0 ? scorer.Cost(e.words) : 0.0;
    e.total = e.am_cost + lm_scale * (lambda * new_cost + (1.0 - lambda) * e.lm_cost);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const NBestEntry &a, const NBestEntry &b) { return a.total < b.total; });
  return entries;
}

}  // namespace hasr
