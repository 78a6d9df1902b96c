// include/hasr/parallel.h

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

#ifndef HASR_PARALLEL_H_
#define HASR_PARALLEL_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hasr/augment.h"
#include "hasr/decoder.h"
#include "hasr/nbest.h"
#include "hasr/rescore.h"
#include "hasr/wer.h"

namespace hasr {

// Per-utterance batch kernels. Each *Batch function distributes utterances
// over `workers` OpenMP threads and returns results in input order; the
// matching *Serial function is the single-threaded reference, and both
// produce identical output.

/// Runs fn(i) for every i in [0, n). If any call throws, the exception of
/// the lowest failing index is rethrown after all threads finish.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)> &fn);

/// Worker count to use; zero or negative means all available threads.
int ResolveWorkers(int requested);

std::vector<DecodeResult> DecodeBatch(const WeightedFst &graph,
                                      const std::vector<Posteriorgram> &pgs,
                                      const DecodeConfig &cfg, int workers);
std::vector<DecodeResult> DecodeBatchSerial(const WeightedFst &graph,
                                            const std::vector<Posteriorgram> &pgs,
                                            const DecodeConfig &cfg);

std::vector<std::vector<NBestEntry>> RescoreBatch(
    const std::vector<std::vector<NBestEntry>> &lists, const SentenceScorer &scorer,
    double lm_scale, double lambda, int workers);
std::vector<std::vector<NBestEntry>> RescoreBatchSerial(
    const std::vector<std::vector<NBestEntry>> &lists, const SentenceScorer &scorer,
    double lm_scale, double lambda);

EvalReport ScoreBatch(const std::vector<CorpusLine> &refs,
                      const std::vector<CorpusLine> &hyps, bool lenient_apostrophe,
                      int workers);
EvalReport ScoreBatchSerial(const std::vector<CorpusLine> &refs,
                            const std::vector<CorpusLine> &hyps, bool lenient_apostrophe);

std::vector<std::vector<NoisyCopy>> AugmentBatch(const std::vector<Wave> &waves,
                                                 const std::vector<std::string> &ids,
                                                 const std::vector<Wave> &noises,
                                                 const AugmentOptions &opts, int workers);
std::vector<std::vector<NoisyCopy>> AugmentBatchSerial(const std::vector<Wave> &waves,
                                                       const std::vector<std::string> &ids,
                                                       const std::vector<Wave> &noises,
                                                       const AugmentOptions &opts);

}  // namespace hasr

#endif  // HASR_PARALLEL_H_
