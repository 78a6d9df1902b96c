// tests/decoder-test.cc

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

#include <cmath>
#include <functional>
#include <map>
#include <limits>
#include <random>
#include <sstream>

#include "expect-error.h"
#include "hasr/decoder.h"
#include "hasr/lattice.h"
#include "hasr/posteriorgram.h"
#include "test-util.h"

namespace hasr {
namespace {

DecodeConfig InfiniteBeam() {
  DecodeConfig cfg;
  cfg.beam = std::numeric_limits<double>::infinity();
  cfg.max_active = std::numeric_limits<int32_t>::max();
  cfg.lattice_beam = 8.0;
  return cfg;
}

// Two-class chain: c0 then c1 emits the single word "w1".
WeightedFst ChainGraph() {
  WeightedFst g;
  for (int i = 0; i < 3; ++i) g.AddState();
  g.SetStart(0);
  g.AddArc(0, Arc{1, 1, 0.0, 1});
  g.AddArc(1, Arc{1, 0, 0.0, 1});
  g.AddArc(1, Arc{2, 0, 0.0, 2});
  g.AddArc(2, Arc{2, 0, 0.0, 2});
  g.SetFinal(2, 0.0);
  auto syms = std::make_shared<SymbolTable>();
  syms->AddSymbol("w1");
  g.SetOutputSymbols(syms);
  return g;
}

TEST(Decode, SinglePath) {
  Posteriorgram pg("u", 2, 2);
  pg(0, 0) = -0.1f;
  pg(0, 1) = -3.0f;
  pg(1, 0) = -3.0f;
  pg(1, 1) = -0.1f;
  auto g = ChainGraph();
  auto r = Decode(g, pg, DecodeConfig());
  EXPECT_EQ(WordStrings(g, r.words), std::vector<std::string>{"w1"});
  EXPECT_FALSE(r.forced_final);
  EXPECT_EQ(r.alignment, (std::vector<Label>{1, 2}));
  EXPECT_DOUBLE_EQ(r.cost, -static_cast<double>(pg(0, 0)) - static_cast<double>(pg(1, 1)));
}

TEST(Decode, InfiniteBeamEqualsBruteForce) {
  std::mt19937_64 rng(42);
  int compared = 0;
  for (int n = 0; n < 250; ++n) {
    const int states = testing::RandInt(rng, 1, 8), classes = testing::RandInt(rng, 1, 4);
    auto g = testing::RandomDecodingGraph(rng, states, classes);
    auto pg = testing::RandomPosteriorgram(rng, testing::RandInt(rng, 1, 12), classes);
    const double oracle = testing::BruteForceDecodeCost(g, pg, 1.0);
    if (!std::isfinite(oracle)) continue;
    auto r = Decode(g, pg, InfiniteBeam());
    ASSERT_FALSE(r.forced_final);
    EXPECT_EQ(r.cost, oracle) << "instance " << n;
    EXPECT_NEAR(r.am_cost + r.lm_cost, r.cost, 1e-9);
    ++compared;
  }
  EXPECT_GE(compared, 200);
}

TEST(Decode, AcousticScaleZeroGivesGraphBest) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 30; ++n) {
    auto g = testing::RandomDecodingGraph(rng, 5, 3);
    const int T = testing::RandInt(rng, 1, 8);
    auto cfg = InfiniteBeam();
    cfg.acoustic_scale = 0.0;
    const double oracle =
        testing::BruteForceDecodeCost(g, testing::RandomPosteriorgram(rng, T, 3), 0.0);
    if (!std::isfinite(oracle)) continue;
    auto a = Decode(g, testing::RandomPosteriorgram(rng, T, 3), cfg);
    auto b = Decode(g, testing::RandomPosteriorgram(rng, T, 3), cfg);
    EXPECT_EQ(a.cost, oracle);
    EXPECT_EQ(a.words, b.words);
    EXPECT_EQ(a.alignment, b.alignment);
  }
}

TEST(Decode, WiderBeamNeverCostsMore) {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 100; ++n) {
    auto g = testing::RandomDecodingGraph(rng, 8, 4);
    auto pg = testing::RandomPosteriorgram(rng, 12, 4);
    double prev = std::numeric_limits<double>::infinity();
    for (auto [beam, active] : {std::pair{1.0, 2}, {2.0, 3}, {4.0, 5}, {8.0, 100}}) {
      DecodeConfig cfg;
      cfg.beam = beam;
      cfg.max_active = active;
      cfg.lattice_beam = beam / 2;
      try {
        auto r = Decode(g, pg, cfg);
        if (r.forced_final) continue;
        EXPECT_LE(r.cost, prev);
        prev = r.cost;
      } catch (const Error &e) {
        EXPECT_EQ(e.code(), "DecodeDeadEnd");
      }
    }
  }
}

// Lowest am + lm over complete lattice paths, optionally restricted to
// paths that spell `words`. Memoized over (state, words consumed).
double LatticeMinCost(const Lattice &lat, const std::vector<std::string> *words) {
  std::map<std::pair<int32_t, size_t>, double> memo;
  std::function<double(int32_t, size_t)> go = [&](int32_t s, size_t pos) {
    auto key = std::make_pair(s, pos);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = std::numeric_limits<double>::infinity();
    if (lat.IsFinal(s) && (!words || pos == words->size()))
      best = lat.Final(s).first + lat.Final(s).second;
    for (const auto &a : lat.Arcs(s)) {
      size_t next = pos;
      if (words && a.word != 0) {
        if (pos == words->size() || lat.WordString(a.word) != (*words)[pos]) continue;
        ++next;
      }
      best = std::min(best, (a.am + a.lm) + go(a.nextstate, next));
    }
    return memo[key] = best;
  };
  return go(0, 0);
}

TEST(Decode, LatticeSoundness) {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 100; ++n) {
    auto g = testing::RandomDecodingGraph(rng, 6, 3);
    auto pg = testing::RandomPosteriorgram(rng, 10, 3);
    if (!std::isfinite(testing::BruteForceDecodeCost(g, pg, 1.0))) continue;
    auto r = Decode(g, pg, InfiniteBeam());
    ASSERT_NO_THROW(r.lattice.Validate());
    EXPECT_NEAR(LatticeBestCost(r.lattice), r.cost, 1e-9);
    EXPECT_NEAR(LatticeMinCost(r.lattice, nullptr), r.cost, 1e-9);
    const auto best_words = WordStrings(g, r.words);
    EXPECT_NEAR(LatticeMinCost(r.lattice, &best_words), r.cost, 1e-9);
  }
}

TEST(Decode, ScaleInvarianceOfArgmin) {
  std::mt19937_64 rng(10);
  for (int n = 0; n < 50; ++n) {
    auto g = testing::RandomDecodingGraph(rng, 6, 3);
    auto pg = testing::RandomPosteriorgram(rng, 9, 3);
    auto scaled = pg;
    for (float &v : scaled.data) v *= 2.0f;
    auto cfg = InfiniteBeam();
    DecodeResult a, b;
    try {
      a = Decode(g, pg, cfg);
      cfg.acoustic_scale = 0.5;
      b = Decode(g, scaled, cfg);
    } catch (const Error &) {
      continue;
    }
    EXPECT_EQ(a.words, b.words);
    EXPECT_EQ(a.alignment, b.alignment);
    EXPECT_EQ(a.cost, b.cost);
  }
}

TEST(Decode, Errors) {
  auto g = ChainGraph();
  EXPECT_HASR_ERROR(Decode(g, Posteriorgram("u", 2, 1), DecodeConfig()), "ClassMismatch");
  DecodeConfig bad;
  bad.beam = 0;
  EXPECT_HASR_ERROR(Decode(g, Posteriorgram("u", 2, 2), bad), "BadConfig");
  bad = DecodeConfig();
  bad.lattice_beam = bad.beam + 1;
  EXPECT_HASR_ERROR(Decode(g, Posteriorgram("u", 2, 2), bad), "BadConfig");

  // Only one frame can be consumed, so the second frame kills every token.
  WeightedFst one;
  one.AddState();
  one.AddState();
  one.SetStart(0);
  one.AddArc(0, Arc{1, 0, 0.0, 1});
  one.SetFinal(1, 0.0);
  EXPECT_HASR_ERROR(Decode(one, Posteriorgram("u", 2, 1), DecodeConfig()), "DecodeDeadEnd");
}

TEST(Decode, ForcedFinal) {
  // One frame cannot reach the final state of the chain.
  auto g = ChainGraph();
  auto r = Decode(g, Posteriorgram("u", 1, 2), DecodeConfig());
  EXPECT_TRUE(r.forced_final);
  EXPECT_EQ(WordStrings(g, r.words), std::vector<std::string>{"w1"});
}

TEST(Decode, WordTimings) {
  auto g = ChainGraph();
  Posteriorgram pg("u", 5, 2);
  auto cfg = DecodeConfig();
  auto r = Decode(g, pg, cfg);
  ASSERT_EQ(r.timings.size(), 1u);
  EXPECT_EQ(r.timings[0].start_frame, 0);
  EXPECT_EQ(r.timings[0].end_frame, 5);
  // Trailing class-2 frames count as silence when declared so.
  cfg.silence_labels = {2};
  for (int t = 0; t < 5; ++t) pg(t, 0) = t < 3 ? 0.0f : -9.0f;
  r = Decode(g, pg, cfg);
  ASSERT_EQ(r.timings.size(), 1u);
  EXPECT_EQ(r.timings[0].end_frame, 3);
}

TEST(Posteriorgram, RoundTripTextAndBinary) {
  std::mt19937_64 rng(11);
  std::vector<Posteriorgram> pgs;
  for (int i = 0; i < 3; ++i) {
    auto pg = testing::RandomPosteriorgram(rng, 5 + i, 4);
    pg.utt_id = "utt" + std::to_string(i);
    pgs.push_back(pg);
  }
  for (bool binary : {false, true}) {
    std::stringstream ss;
    WritePosteriorgrams(pgs, ss, binary);
    EXPECT_EQ(ReadPosteriorgrams(ss), pgs);
  }
}

TEST(Posteriorgram, FrameRateAndShape) {
  Posteriorgram pg("u", 500, 3, 50.0);
  EXPECT_DOUBLE_EQ(pg.Duration(), 10.0);
  EXPECT_HASR_ERROR(Posteriorgram("u", 0, 3).Validate(), "MatrixShape");
  pg(3, 1) = std::numeric_limits<float>::quiet_NaN();
  EXPECT_HASR_ERROR(pg.Validate(), "NonFiniteScore");
  std::istringstream bad("u 2 2 50\n0 0\n");
  EXPECT_HASR_ERROR(ReadPosteriorgrams(bad), "MatrixShape");
}

TEST(Lattice, WriteReadRoundTrip) {
  std::mt19937_64 rng(12);
  auto g = testing::RandomDecodingGraph(rng, 6, 3);
  auto pg = testing::RandomPosteriorgram(rng, 8, 3);
  DecodeResult r;
  for (int tries = 0; tries < 20; ++tries) {
    try {
      r = Decode(g, pg, InfiniteBeam());
      break;
    } catch (const Error &) {
      g = testing::RandomDecodingGraph(rng, 6, 3);
    }
  }
  std::stringstream ss;
  WriteLattices({{"u1", r.lattice}}, ss);
  auto back = ReadLattices(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].first, "u1");
  EXPECT_NEAR(LatticeBestCost(back[0].second), LatticeBestCost(r.lattice), 1e-9);
  auto a = testing::EnumerateLattice(r.lattice, nullptr);
  auto b = testing::EnumerateLattice(back[0].second, nullptr);
  ASSERT_EQ(a.size(), b.size());
  for (const auto &[w, c] : a) EXPECT_NEAR(b.at(w).am + b.at(w).lm, c.am + c.lm, 1e-9);
}

}  // namespace
}  // namespace hasr
