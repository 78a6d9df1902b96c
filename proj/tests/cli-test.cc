// tests/cli-test.cc

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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cli.h"
#include "hasr/graph.h"
#include "hasr/manifest.h"
#include "hasr/posteriorgram.h"
#include "hasr/synth.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"
#include "hasr/wave.h"

namespace hasr {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

void Spit(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

struct Outcome {
  int rc;
  std::string out, err;
};

Outcome Hasr(std::vector<std::string> args) {
  args.insert(args.begin(), "hasr");
  std::ostringstream out, err;
  int rc = cli::Run(args, out, err);
  return {rc, out.str(), err.str()};
}

// Shared fixture: a small synthetic language, its bigram LM, the decoding
// graph and matching posteriorgrams.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("hasr-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    SyntheticLanguageOptions lo;
    lo.vocab_size = 8;
    auto lang = MakeSyntheticLanguage(lo, 3);
    std::mt19937_64 rng(4);
    auto write_text = [](const fs::path &p, const std::vector<std::vector<std::string>> &s) {
      std::ofstream os(p);
      for (size_t i = 0; i < s.size(); ++i) os << "u" << i << '\t' << Join(s[i], " ") << '\n';
    };
    auto train = SampleSentences(lang, 300, 6, rng);
    auto test = SampleSentences(lang, 12, 6, rng);
    write_text(P("train.txt"), train);
    write_text(P("ref.txt"), test);
    ASSERT_EQ(Hasr({"train-lm", "--input", P("train.txt"), "--output", P("lm.arpa"), "--order",
                    "2"}).rc, 0);
    ASSERT_EQ(Hasr({"build-graph", "--lm", P("lm.arpa"), "--output-dir", P("graph"),
                    "--train-text", P("train.txt"), "--tying-threshold", "20"}).rc, 0);
    auto lex = Lexicon::Read(P("graph/lexicon.txt"));
    auto tying = BiphoneTying::Read(P("graph/tying.txt"));
    std::vector<Posteriorgram> pgs;
    PosteriorSynthOptions po;
    po.margin = 3.0;
    for (size_t i = 0; i < test.size(); ++i)
      pgs.push_back(SynthesizePosteriorgram("u" + std::to_string(i),
                                            TrueClassSequence(test[i], lex, tying),
                                            tying.NumClasses(), po, rng));
    WritePosteriorgrams(pgs, P("pg.txt"), false);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string P(const std::string &name) { return (dir_ / name).string(); }

  static fs::path dir_;
};

fs::path CliTest::dir_;

TEST(CommandTable, EveryOperationHasOneOwner) {
  const auto names = cli::SubcommandNames();
  const std::set<std::string> subs(names.begin(), names.end());
  std::set<std::pair<std::string, std::string>> ops;
  std::map<std::string, int> owned;
  for (const auto &o : cli::CommandTable()) {
    EXPECT_TRUE(ops.emplace(o.module, o.operation).second) << o.operation;
    EXPECT_TRUE(subs.count(o.subcommand)) << o.subcommand;
    ++owned[o.subcommand];
  }
  for (const auto &s : subs) {
    EXPECT_GT(owned[s], 0) << s;
    EXPECT_STRNE(cli::ConfigSection(s), "");
  }
  const std::set<std::string> modules{"textnorm", "subword", "ngram",    "fst",
                                      "decode",   "rescore", "pipeline", "eval"};
  std::set<std::string> seen;
  for (const auto &o : cli::CommandTable()) seen.insert(o.module);
  EXPECT_EQ(seen, modules);
}

TEST(Cli, VersionAndUsageErrors) {
  auto v = Hasr({"--version"});
  EXPECT_EQ(v.rc, 0);
  EXPECT_NE(v.out.find(cli::kToolkitVersion), std::string::npos);
  auto bad = Hasr({"score", "--no-such-flag"});
  EXPECT_EQ(bad.rc, 2);
  EXPECT_EQ(bad.err.rfind("ERROR UnknownFlag", 0), 0u) << bad.err;
  EXPECT_EQ(Hasr({"score"}).rc, 2);
  auto missing = Hasr({"score", "--ref", "/nonexistent/ref", "--hyp", "/nonexistent/hyp"});
  EXPECT_EQ(missing.rc, 1);
  EXPECT_EQ(missing.err.rfind("ERROR MissingPath", 0), 0u) << missing.err;
}

TEST_F(CliTest, ScoreApostrophes) {
  Spit(P("a-ref.txt"), "u1\ta' bhùth\n");
  Spit(P("a-hyp.txt"), "u1\ta bhùth\n");
  auto lenient = Hasr({"score", "--ref", P("a-ref.txt"), "--hyp", P("a-hyp.txt"),
                       "--lenient-apostrophe"});
  EXPECT_EQ(lenient.rc, 0);
  EXPECT_NE(lenient.out.find("WER 0.00%"), std::string::npos) << lenient.out;
  auto strict = Hasr({"score", "--ref", P("a-ref.txt"), "--hyp", P("a-hyp.txt")});
  EXPECT_NE(strict.out.find("WER 50.00%"), std::string::npos) << strict.out;
}

TEST_F(CliTest, DecodeRescoreScore) {
  ASSERT_EQ(Hasr({"decode", "--graph-dir", P("graph"), "--posteriors", P("pg.txt"), "--output",
                  P("hyp.txt"), "--lattices", P("lat.txt")}).rc, 0);
  auto s = Hasr({"score", "--ref", P("ref.txt"), "--hyp", P("hyp.txt")});
  EXPECT_EQ(s.rc, 0);
  EXPECT_NE(s.out.find("%WER"), std::string::npos);
  ASSERT_EQ(Hasr({"nbest", "--lattices", P("lat.txt"), "--output", P("nb.txt"), "--n", "10"}).rc,
            0);
  ASSERT_EQ(Hasr({"rescore", "--nbest", P("nb.txt"), "--lm", P("lm.arpa"), "--lm-scale", "1",
                  "--lambda", "1", "--output", P("nb2.txt"), "--hyp-output", P("hyp2.txt")}).rc,
            0);
  EXPECT_EQ(ReadCorpus(P("hyp2.txt")).size(), 12u);
  auto both = Hasr({"rescore", "--nbest", P("nb.txt"), "--lm", P("lm.arpa"), "--rnnlm",
                    P("lm.arpa"), "--lm-scale", "1", "--lambda", "1", "--output", P("x")});
  EXPECT_EQ(both.rc, 1);
  EXPECT_EQ(both.err.rfind("ERROR BadConfig", 0), 0u) << both.err;
}

TEST_F(CliTest, AcousticScaleZeroFollowsTheLm) {
  ASSERT_EQ(Hasr({"decode", "--graph-dir", P("graph"), "--posteriors", P("pg.txt"), "--output",
                  P("hyp0.txt"), "--acoustic-scale", "0"}).rc, 0);
  // With no acoustic evidence every utterance gets the same hypothesis.
  auto hyps = ReadCorpus(P("hyp0.txt"));
  ASSERT_EQ(hyps.size(), 12u);
  for (const auto &h : hyps) EXPECT_EQ(h.text, hyps[0].text);
}

TEST_F(CliTest, RerunsAreBitIdentical) {
  for (const char *tag : {"r1", "r2"}) {
    const std::string t = tag;
    ASSERT_EQ(Hasr({"decode", "--graph-dir", P("graph"), "--posteriors", P("pg.txt"),
                    "--output", P(t + "-hyp.txt"), "--lattices", P(t + "-lat.txt"),
                    "--workers", t == "r1" ? "1" : "3"}).rc, 0);
    ASSERT_EQ(Hasr({"train-rnnlm", "--input", P("train.txt"), "--output", P(t + ".rnn"),
                    "--embed-dim", "4", "--hidden-dim", "4", "--epochs", "2"}).rc, 0);
  }
  EXPECT_EQ(Slurp(P("r1-hyp.txt")), Slurp(P("r2-hyp.txt")));
  EXPECT_EQ(Slurp(P("r1-lat.txt")), Slurp(P("r2-lat.txt")));
  EXPECT_EQ(Slurp(P("r1.rnn")), Slurp(P("r2.rnn")));
}

TEST_F(CliTest, ConfigPrecedence) {
  Spit(P("order1.ini"), "[ngram]\norder = 1\n\n[decode]\nbeam = 12\n");
  ASSERT_EQ(Hasr({"--config", P("order1.ini"), "train-lm", "--input", P("train.txt"),
                  "--output", P("c1.arpa")}).rc, 0);
  EXPECT_EQ(Slurp(P("c1.arpa")).find("\\2-grams:"), std::string::npos);
  ASSERT_EQ(Hasr({"--config", P("order1.ini"), "train-lm", "--input", P("train.txt"),
                  "--output", P("c2.arpa"), "--order", "2"}).rc, 0);
  EXPECT_NE(Slurp(P("c2.arpa")).find("\\2-grams:"), std::string::npos);

  Spit(P("bad-section.ini"), "[nonsense]\nx = 1\n");
  auto r = Hasr({"--config", P("bad-section.ini"), "train-lm", "--input", P("train.txt"),
                 "--output", P("c3.arpa")});
  EXPECT_EQ(r.rc, 1);
  EXPECT_EQ(r.err.rfind("ERROR ConfigParse", 0), 0u) << r.err;
  Spit(P("bad-key.ini"), "[ngram]\nsmoothing = 3\n");
  r = Hasr({"--config", P("bad-key.ini"), "train-lm", "--input", P("train.txt"), "--output",
            P("c3.arpa")});
  EXPECT_EQ(r.err.rfind("ERROR ConfigParse", 0), 0u) << r.err;
}

TEST_F(CliTest, SegmentManifestAugment) {
  // Three sources of 3, 12 and 31 seconds of continuous speech.
  std::ostringstream timings;
  for (auto [src, secs] : {std::pair{"s3", 3}, {"s12", 12}, {"s31", 31}})
    for (int i = 0; i < secs; ++i)
      timings << src << "\t0\t50\tw\t" << i * 50 << '\t' << (i + 1) * 50 << '\n';
  Spit(P("timings.txt"), timings.str());
  ASSERT_EQ(Hasr({"segment", "--timings", P("timings.txt"), "--output", P("segs.tsv")}).rc, 0);
  EXPECT_EQ(ReadLines(P("segs.tsv")).size(), 1u);
  EXPECT_EQ(Split(ReadLines(P("segs.tsv"))[0], '\t')[0], "s12");

  Wave w;
  for (int i = 0; i < 16000; ++i)
    w.samples.push_back(static_cast<int16_t>(3000 * std::sin(2 * std::numbers::pi * i / 40)));
  WriteWave(w, P("s12.wav"));
  Wave n = w;
  for (size_t i = 0; i < n.samples.size(); ++i) n.samples[i] = static_cast<int16_t>(i * 7919 % 2001 - 1000);
  WriteWave(n, P("noise.wav"));
  Spit(P("paths.txt"), "s12\t" + P("s12.wav") + "\n");
  Spit(P("noises.txt"), P("noise.wav") + "\n");
  ASSERT_EQ(Hasr({"pseudo-manifest", "--segments", P("segs.tsv"), "--source-paths",
                  P("paths.txt"), "--output", P("pseudo.tsv")}).rc, 0);
  for (const char *tag : {"a", "b"}) {
    const std::string t = tag;
    ASSERT_EQ(Hasr({"augment", "--manifest", P("pseudo.tsv"), "--noise-list", P("noises.txt"),
                    "--output-dir", P("aug-" + t), "--output", P("aug-" + t + ".tsv"), "--seed",
                    "5"}).rc, 0);
  }
  EXPECT_EQ(Manifest::Read(P("aug-a.tsv")).Size(), 4u);
  for (int k = 1; k <= 3; ++k) {
    const std::string f = "s12-0000000-0001200-aug" + std::to_string(k) + ".wav";
    EXPECT_EQ(Slurp(dir_ / "aug-a" / f), Slurp(dir_ / "aug-b" / f)) << f;
  }
  Spit(P("bad-segs.tsv"), "s12\tnotanumber\t3\tw\n");
  auto r = Hasr({"pseudo-manifest", "--segments", P("bad-segs.tsv"), "--output", P("x.tsv")});
  EXPECT_EQ(r.err.rfind("ERROR BadSegments", 0), 0u) << r.err;
}

TEST_F(CliTest, SubwordRoundTrip) {
  ASSERT_EQ(Hasr({"normalize", "--input", P("train.txt"), "--output", P("norm.txt")}).rc, 0);
  ASSERT_EQ(Hasr({"train-bpe", "--input", P("norm.txt"), "--output", P("bpe.model"),
                  "--vocab-size", "30"}).rc, 0);
  ASSERT_EQ(Hasr({"encode", "--model", P("bpe.model"), "--input", P("norm.txt"), "--output",
                  P("enc.txt")}).rc, 0);
  ASSERT_EQ(Hasr({"encode", "--model", P("bpe.model"), "--input", P("enc.txt"), "--output",
                  P("dec.txt"), "--reverse"}).rc, 0);
  EXPECT_EQ(Slurp(P("dec.txt")), Slurp(P("norm.txt")));
  auto ppl = Hasr({"ppl", "--lm", P("lm.arpa"), "--input", P("ref.txt")});
  EXPECT_EQ(ppl.rc, 0);
  EXPECT_NE(ppl.out.find("ppl= "), std::string::npos);
}

}  // namespace
}  // namespace hasr
