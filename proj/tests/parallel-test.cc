// tests/parallel-test.cc

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

#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <sstream>

#include "expect-error.h"
#include "hasr/parallel.h"
#include "hasr/util/text-utils.h"
#include "test-util.h"

namespace hasr {
namespace {

std::string LatticeText(const Lattice &lat) {
  std::ostringstream os;
  WriteLattices({{"x", lat}}, os);
  return os.str();
}

std::string NBestText(const std::vector<std::vector<NBestEntry>> &lists) {
  std::vector<std::pair<std::string, std::vector<NBestEntry>>> named;
  for (size_t i = 0; i < lists.size(); ++i) named.emplace_back(std::to_string(i), lists[i]);
  std::ostringstream os;
  WriteNBest(named, os);
  return os.str();
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(hits.size(), 4, [&](size_t i) { ++hits[i]; });
  for (auto &h : hits) EXPECT_EQ(h.load(), 1);
  ParallelFor(0, 4, [](size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsLowestFailure) {
  auto fn = [](size_t i) {
    if (i % 7 == 3) throw Error("E" + std::to_string(i), "boom");
  };
  for (int w : {1, 3, 8}) EXPECT_HASR_ERROR(ParallelFor(50, w, fn), "E3");
  EXPECT_GE(ResolveWorkers(0), 1);
  EXPECT_EQ(ResolveWorkers(3), 3);
}

TEST(Batch, DecodeMatchesSerial) {
  std::mt19937_64 rng(1);
  auto g = testing::RandomDecodingGraph(rng, 6, 3);
  std::vector<Posteriorgram> pgs;
  for (int i = 0; i < 40; ++i)
    pgs.push_back(testing::RandomPosteriorgram(rng, testing::RandInt(rng, 1, 12), 3));
  DecodeConfig cfg;
  std::vector<DecodeResult> serial;
  try {
    serial = DecodeBatchSerial(g, pgs, cfg);
  } catch (const Error &) {
    GTEST_SKIP() << "random graph has a dead end";
  }
  for (int w : {1, 2, 4}) {
    auto par = DecodeBatch(g, pgs, cfg, w);
    ASSERT_EQ(par.size(), serial.size());
    for (size_t i = 0; i < par.size(); ++i) {
      EXPECT_EQ(par[i].words, serial[i].words);
      EXPECT_EQ(par[i].alignment, serial[i].alignment);
      EXPECT_EQ(par[i].cost, serial[i].cost);
      EXPECT_EQ(LatticeText(par[i].lattice), LatticeText(serial[i].lattice));
    }
  }
}

TEST(Batch, RescoreMatchesSerial) {
  std::mt19937_64 rng(2);
  auto lm = testing::RandomBigramLm(rng, 5, 40);
  auto syms = std::make_shared<SymbolTable>();
  for (const auto &w : lm.words()) syms->AddSymbol(w);
  std::vector<std::vector<NBestEntry>> lists;
  for (int i = 0; i < 30; ++i)
    lists.push_back(NBest(testing::RandomLmLattice(rng, lm, syms, 4, 2), 20));
  NGramScorer scorer(lm);
  const std::string serial = NBestText(RescoreBatchSerial(lists, scorer, 0.8, 0.5));
  for (int w : {1, 2, 4}) EXPECT_EQ(NBestText(RescoreBatch(lists, scorer, 0.8, 0.5, w)), serial);
}

TEST(Batch, ScoreMatchesSerial) {
  std::mt19937_64 rng(3);
  std::vector<CorpusLine> refs, hyps;
  for (int i = 0; i < 200; ++i) {
    refs.push_back({"u" + std::to_string(i), Join(testing::RandomTokens(rng, 8, 4), " ")});
    hyps.push_back({"u" + std::to_string(i), Join(testing::RandomTokens(rng, 8, 4), " ")});
  }
  std::ostringstream a;
  ScoreBatchSerial(refs, hyps, true).WriteTsv(a);
  for (int w : {1, 2, 4}) {
    std::ostringstream b;
    ScoreBatch(refs, hyps, true, w).WriteTsv(b);
    EXPECT_EQ(b.str(), a.str());
  }
}

TEST(Batch, AugmentMatchesSerial) {
  std::mt19937_64 rng(4);
  auto noise = [&](size_t n) {
    Wave w;
    std::uniform_int_distribution<int> d(-3000, 3000);
    for (size_t i = 0; i < n; ++i) w.samples.push_back(static_cast<int16_t>(d(rng)));
    return w;
  };
  std::vector<Wave> pool{noise(3000), noise(800)}, waves;
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) {
    waves.push_back(noise(1000 + 37 * i));
    ids.push_back("w" + std::to_string(i));
  }
  AugmentOptions o;
  o.seed = 9;
  auto serial = AugmentBatchSerial(waves, ids, pool, o);
  for (int w : {1, 2, 4}) {
    auto par = AugmentBatch(waves, ids, pool, o, w);
    ASSERT_EQ(par.size(), serial.size());
    for (size_t i = 0; i < par.size(); ++i)
      for (size_t k = 0; k < par[i].size(); ++k) EXPECT_EQ(par[i][k].wave, serial[i][k].wave);
  }
}

}  // namespace
}  // namespace hasr
