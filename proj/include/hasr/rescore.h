// include/hasr/rescore.h

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

#ifndef HASR_RESCORE_H_
#define HASR_RESCORE_H_

#include <string>
#include <vector>

#include "hasr/nbest.h"
#include "hasr/ngram.h"
#include "hasr/rnnlm.h"

namespace hasr {

/// Sentence-level LM cost in natural-log units, -ln P(words </s> | <s>),
/// so that it is commensurate with decoding-graph weights.
class SentenceScorer {
 public:
  virtual ~SentenceScorer() = default;
  virtual double Cost(const std::vector<std::string> &words) const = 0;
};

class NGramScorer : public SentenceScorer {
 public:
  explicit NGramScorer(const BackoffNGramLM &lm) : lm_(lm) {}
  double Cost(const std::vector<std::string> &words) const override;

 private:
  const BackoffNGramLM &lm_;
};

class RnnScorer : public SentenceScorer {
 public:
  explicit RnnScorer(const RnnLm &lm) : lm_(lm) {}
  double Cost(const std::vector<std::string> &words) const override {
    return lm_.SentenceCost(words);
  }

 private:
  const RnnLm &lm_;
};

/// New total = am_cost + lm_scale * (lambda * new_cost + (1 - lambda) *
/// lm_cost), entries re-sorted ascending (stable). Throws
/// Error("BadWeight") for lambda outside [0, 1] or a negative or non-finite
/// lm_scale, and Error("EmptyNBest") for an empty list.
std::vector<NBestEntry> RescoreNBest(std::vector<NBestEntry> entries,
                                     const SentenceScorer &scorer, double lm_scale,
                                     double lambda);

}  // namespace hasr

#endif  // HASR_RESCORE_H_
