// src/parallel.cc

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

#include "hasr/parallel.h"

#include <omp.h>

#include <exception>
#include <unordered_map>
#include <unordered_set>

#include "hasr/error.h"
#include "hasr/util/text-utils.h"

namespace hasr {

int ResolveWorkers(int requested) {
  const int hw = omp_get_max_threads();
  if (requested <= 0) return hw;
  return requested;
}

void ParallelFor(size_t n, int workers, const std::function<void(size_t)> &fn) {
  std::vector<std::exception_ptr> errors(n);
  const int64_t count = static_cast<int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(ResolveWorkers(workers))
  for (int64_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<DecodeResult> DecodeBatch(const WeightedFst &graph,
                                      const std::vector<Posteriorgram> &pgs,
                                      const DecodeConfig &cfg, int workers) {
  std::vector<DecodeResult> out(pgs.size());
  ParallelFor(pgs.size(), workers,
              [&](size_t i) { out[i] = Decode(graph, pgs[i], cfg); });
  return out;
}

std::vector<DecodeResult> DecodeBatchSerial(const WeightedFst &graph,
                                            const std::vector<Posteriorgram> &pgs,
                                            const DecodeConfig &cfg) {
  std::vector<DecodeResult> out;
  out.reserve(pgs.size());
  for (const auto &pg : pgs) out.push_back(Decode(graph, pg, cfg));
  return out;
}

std::vector<std::vector<NBestEntry>> RescoreBatch(
    const std::vector<std::vector<NBestEntry>> &lists, const SentenceScorer &scorer,
    double lm_scale, double lambda, int workers) {
  std::vector<std::vector<NBestEntry>> out(lists.size());
  ParallelFor(lists.size(), workers, [&](size_t i) {
    out[i] = RescoreNBest(lists[i], scorer, lm_scale, lambda);
  });
  return out;
}

std::vector<std::vector<NBestEntry>> RescoreBatchSerial(
    const std::vector<std::vector<NBestEntry>> &lists, const SentenceScorer &scorer,
    double lm_scale, double lambda) {
  std::vector<std::vector<NBestEntry>> out;
  out.reserve(lists.size());
  for (const auto &l : lists) out.push_back(RescoreNBest(l, scorer, lm_scale, lambda));
  return out;
}

EvalReport ScoreBatch(const std::vector<CorpusLine> &refs,
                      const std::vector<CorpusLine> &hyps, bool lenient_apostrophe,
                      int workers) {
  std::unordered_set<std::string> ref_ids;
  for (const auto &r : refs) ref_ids.insert(r.id);
  for (const auto &h : hyps)
    if (!ref_ids.count(h.id))
      throw Error("MissingReference", "hypothesis '" + h.id + "' has no reference");
  std::unordered_map<std::string, const CorpusLine *> hyp_by_id;
  for (const auto &h : hyps) hyp_by_id[h.id] = &h;

  EvalReport report;
  report.utterances.resize(refs.size());
  ParallelFor(refs.size(), workers, [&](size_t i) {
    auto it = hyp_by_id.find(refs[i].id);
    std::vector<std::string> hyp;
    if (it != hyp_by_id.end()) hyp = SplitWhitespace(it->second->text);
    report.utterances[i] =
        ScoreUtterance(refs[i].id, SplitWhitespace(refs[i].text), hyp, lenient_apostrophe);
  });
  for (const auto &u : report.utterances) report.totals += u.counts;
  return report;
}

EvalReport ScoreBatchSerial(const std::vector<CorpusLine> &refs,
                            const std::vector<CorpusLine> &hyps, bool lenient_apostrophe) {
  return ComputeWer(refs, hyps, lenient_apostrophe);
}

std::vector<std::vector<NoisyCopy>> AugmentBatch(const std::vector<Wave> &waves,
                                                 const std::vector<std::string> &ids,
                                                 const std::vector<Wave> &noises,
                                                 const AugmentOptions &opts, int workers) {
  if (ids.size() != waves.size())
    throw Error("BadConfig", "one utterance id per waveform is required");
  std::vector<std::vector<NoisyCopy>> out(waves.size());
  ParallelFor(waves.size(), workers, [&](size_t i) {
    out[i] = AugmentNoise(waves[i], noises, opts, ids[i]);
  });
  return out;
}

std::vector<std::vector<NoisyCopy>> AugmentBatchSerial(const std::vector<Wave> &waves,
                                                       const std::vector<std::string> &ids,
                                                       const std::vector<Wave> &noises,
                                                       const AugmentOptions &opts) {
  if (ids.size() != waves.size())
    throw Error("BadConfig", "one utterance id per waveform is required");
  std::vector<std::vector<NoisyCopy>> out;
  out.reserve(waves.size());
  for (size_t i = 0; i < waves.size(); ++i)
    out.push_back(AugmentNoise(waves[i], noises, opts, ids[i]));
  return out;
}

}  // namespace hasr
