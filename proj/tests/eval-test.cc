// tests/eval-test.cc

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

#include <random>
#include <sstream>

#include "expect-error.h"
#include "hasr/wer.h"
#include "test-util.h"

namespace hasr {
namespace {

using Words = std::vector<std::string>;

TEST(Align, HandExample) {
  auto s = ScoreUtterance("u", {"a", "b", "c"}, {"a", "x", "c", "d"}, false);
  EXPECT_EQ(s.counts.sub, 1);
  EXPECT_EQ(s.counts.ins, 1);
  EXPECT_EQ(s.counts.del, 0);
  EXPECT_EQ(s.counts.ref_len, 3);
  ASSERT_EQ(s.alignment.size(), 4u);
  EXPECT_EQ(s.alignment[1].op, EditOp::kSub);
  EXPECT_EQ(s.alignment[3].op, EditOp::kIns);
  EXPECT_EQ(s.alignment[3].ref, "");
  EvalReport r;
  r.totals = s.counts;
  EXPECT_NEAR(r.Wer(), 2.0 / 3.0, 1e-12);
}

TEST(Align, MatchesDpOracle) {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 1000; ++n) {
    const Words ref = testing::RandomTokens(rng, 8, 4), hyp = testing::RandomTokens(rng, 8, 4);
    auto s = ScoreUtterance("u", ref, hyp, false);
    EXPECT_EQ(s.counts.Errors(), testing::EditDistanceOracle(ref, hyp));
    // The alignment must spell out both sequences.
    Words r2, h2;
    int64_t errors = 0;
    for (const auto &p : s.alignment) {
      if (p.op != EditOp::kIns) r2.push_back(p.ref);
      if (p.op != EditOp::kDel) h2.push_back(p.hyp);
      if (p.op != EditOp::kOk) ++errors;
      EXPECT_EQ(p.op == EditOp::kOk, p.op != EditOp::kIns && p.op != EditOp::kDel &&
                                         p.ref == p.hyp);
    }
    EXPECT_EQ(r2, ref);
    EXPECT_EQ(h2, hyp);
    EXPECT_EQ(errors, s.counts.Errors());
    EXPECT_EQ(s.counts.ref_len, static_cast<int64_t>(ref.size()));
  }
}

TEST(Align, MetricProperties) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 300; ++n) {
    const Words a = testing::RandomTokens(rng, 7, 3), b = testing::RandomTokens(rng, 7, 3),
                c = testing::RandomTokens(rng, 7, 3);
    auto d = [](const Words &x, const Words &y) {
      return ScoreUtterance("u", x, y, false).counts.Errors();
    };
    EXPECT_EQ(d(a, a), 0);
    EXPECT_EQ(d(a, b), d(b, a));
    EXPECT_LE(d(a, c), d(a, b) + d(b, c));
  }
}

TEST(Wer, ApostropheFixture) {
  std::vector<CorpusLine> ref{{"u1", "a' bhùth"}}, hyp{{"u1", "a bhùth"}};
  EXPECT_DOUBLE_EQ(ComputeWer(ref, hyp, true).Wer(), 0.0);
  EXPECT_DOUBLE_EQ(ComputeWer(ref, hyp, false).Wer(), 0.5);
  auto lenient = ComputeWer(ref, hyp, true);
  EXPECT_EQ(lenient.utterances[0].alignment[0].op, EditOp::kOk);
}

TEST(Wer, LenientNeverWorse) {
  std::mt19937_64 rng(3);
  const Words vocab{"a", "a'", "'a", "b", "b'", "'b'"};
  auto draw = [&] {
    Words w;
    for (int i = testing::RandInt(rng, 0, 6); i > 0; --i)
      w.push_back(vocab[testing::RandInt(rng, 0, 5)]);
    return w;
  };
  for (int n = 0; n < 300; ++n) {
    const Words r = draw(), h = draw();
    EXPECT_LE(ScoreUtterance("u", r, h, true).counts.Errors(),
              ScoreUtterance("u", r, h, false).counts.Errors());
  }
}

TEST(Wer, CorpusPairing) {
  std::vector<CorpusLine> ref{{"u1", "a b"}, {"u2", "c d e"}}, hyp{{"u1", "a b"}};
  auto rep = ComputeWer(ref, hyp, false);
  EXPECT_EQ(rep.totals.del, 3);
  EXPECT_NEAR(rep.Wer(), 0.6, 1e-12);
  std::ostringstream os;
  rep.WriteSummary(os);
  EXPECT_NE(os.str().find("WER 60.00%"), std::string::npos);
  std::ostringstream tsv;
  rep.WriteTsv(tsv);
  EXPECT_EQ(tsv.str(), "utt_id\tsub\tdel\tins\tref_len\nu1\t0\t0\t0\t2\nu2\t0\t3\t0\t3\n");
  hyp.push_back({"u9", "x"});
  EXPECT_HASR_ERROR(ComputeWer(ref, hyp, false), "MissingReference");
  EXPECT_HASR_ERROR(ComputeWer({{"u", ""}}, {}, false).Wer(), "EmptyReference");
}

}  // namespace
}  // namespace hasr
