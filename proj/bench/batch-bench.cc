// bench/batch-bench.cc

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

// Serial reference kernels against their OpenMP batch versions. The batch
// benchmarks take the worker count as their argument.

#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "hasr/graph.h"
#include "hasr/ngram.h"
#include "hasr/parallel.h"
#include "hasr/synth.h"
#include "hasr/util/text-utils.h"

namespace hasr {
namespace {

struct Workload {
  WeightedFst graph;
  std::vector<Posteriorgram> pgs;
  BackoffNGramLM lm{2};
  std::vector<std::vector<NBestEntry>> nbests;
  std::vector<CorpusLine> refs, hyps;
  std::vector<Wave> waves, noises;
  std::vector<std::string> ids;
};

const Workload &GetWorkload() {
  static const Workload w = [] {
    spdlog::set_level(spdlog::level::warn);
    Workload w;
    SyntheticLanguageOptions lo;
    auto lang = MakeSyntheticLanguage(lo, 1);
    std::mt19937_64 rng(2);
    const auto train = SampleSentences(lang, 2000, lo.max_words, rng);
    const auto test = SampleSentences(lang, 64, lo.max_words, rng);
    w.lm = TrainKneserNey(train, 2);
    WeightedFst G = GrammarFst(w.lm);
    std::vector<std::string> vocab;
    for (WordId i = 0; i < static_cast<WordId>(w.lm.VocabSize()); ++i)
      vocab.push_back(w.lm.Word(i));
    Lexicon lex = GraphemeLexicon(vocab);
    WeightedFst L = LexiconFst(lex, G.OutputSymbols(), {});
    const auto &syms = L.InputSymbols();
    std::vector<std::string> units(syms->symbols().begin() + 1, syms->symbols().end());
    BiphoneTying tying = ClusterBiphones({}, kMonophoneThreshold, units);
    w.graph = BuildDecodingGraph(TopologyFst(tying.NumClasses()), ContextFst(tying, syms), L, G,
                                 {});
    PosteriorSynthOptions po;
    po.margin = 2.0;
    for (size_t i = 0; i < test.size(); ++i) {
      w.pgs.push_back(SynthesizePosteriorgram("u" + std::to_string(i),
                                              TrueClassSequence(test[i], lex, tying),
                                              tying.NumClasses(), po, rng));
      w.refs.push_back({"u" + std::to_string(i), Join(test[i], " ")});
    }
    for (const auto &r : DecodeBatch(w.graph, w.pgs, DecodeConfig(), 0)) {
      w.hyps.push_back({"u" + std::to_string(w.hyps.size()),
                        Join(WordStrings(w.graph, r.words), " ")});
      w.nbests.push_back(NBest(r.lattice, 100));
    }
    std::normal_distribution<double> n(0.0, 2000.0);
    for (int k = 0; k < 4; ++k) {
      Wave noise;
      for (int i = 0; i < 16000 * 3; ++i)
        noise.samples.push_back(static_cast<int16_t>(std::clamp(n(rng), -32000.0, 32000.0)));
      w.noises.push_back(std::move(noise));
    }
    for (int u = 0; u < 32; ++u) {
      Wave s;
      for (int i = 0; i < 16000 * 4; ++i)
        s.samples.push_back(static_cast<int16_t>(
            5000 * std::sin(2 * std::numbers::pi * (200 + 10 * u) * i / 16000.0)));
      w.waves.push_back(std::move(s));
      w.ids.push_back("a" + std::to_string(u));
    }
    return w;
  }();
  return w;
}

void BM_DecodeSerial(benchmark::State &state) {
  const auto &w = GetWorkload();
  for (auto _ : state) benchmark::DoNotOptimize(DecodeBatchSerial(w.graph, w.pgs, {}));
}

void BM_DecodeBatch(benchmark::State &state) {
  const auto &w = GetWorkload();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(DecodeBatch(w.graph, w.pgs, {}, workers));
}

void BM_RescoreSerial(benchmark::State &state) {
  const auto &w = GetWorkload();
  NGramScorer scorer(w.lm);
  for (auto _ : state) benchmark::DoNotOptimize(RescoreBatchSerial(w.nbests, scorer, 1.0, 1.0));
}

void BM_RescoreBatch(benchmark::State &state) {
  const auto &w = GetWorkload();
  NGramScorer scorer(w.lm);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(RescoreBatch(w.nbests, scorer, 1.0, 1.0, workers));
}

void BM_ScoreSerial(benchmark::State &state) {
  const auto &w = GetWorkload();
  for (auto _ : state) benchmark::DoNotOptimize(ScoreBatchSerial(w.refs, w.hyps, true));
}

void BM_ScoreBatch(benchmark::State &state) {
  const auto &w = GetWorkload();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ScoreBatch(w.refs, w.hyps, true, workers));
}

void BM_AugmentSerial(benchmark::State &state) {
  const auto &w = GetWorkload();
  for (auto _ : state)
    benchmark::DoNotOptimize(AugmentBatchSerial(w.waves, w.ids, w.noises, AugmentOptions()));
}

void BM_AugmentBatch(benchmark::State &state) {
  const auto &w = GetWorkload();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        AugmentBatch(w.waves, w.ids, w.noises, AugmentOptions(), workers));
}

BENCHMARK(BM_DecodeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecodeBatch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RescoreSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RescoreBatch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScoreSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScoreBatch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_AugmentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AugmentBatch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace hasr

BENCHMARK_MAIN();
