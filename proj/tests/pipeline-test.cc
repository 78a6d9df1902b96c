// tests/pipeline-test.cc

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
#include <numbers>
#include <random>
#include <sstream>

#include "expect-error.h"
#include "hasr/augment.h"
#include "hasr/manifest.h"
#include "hasr/segment.h"
#include "hasr/wave.h"
#include "test-util.h"

namespace hasr {
namespace {

TEST(ChunkStream, Examples) {
  auto c = ChunkStream(95.0);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], std::make_pair(0.0, 30.0));
  EXPECT_EQ(c[3], std::make_pair(90.0, 95.0));
  EXPECT_EQ(ChunkStream(30.0).size(), 1u);
  ASSERT_EQ(ChunkStream(0.5).size(), 1u);
  EXPECT_EQ(ChunkStream(0.5)[0].second, 0.5);
  EXPECT_HASR_ERROR(ChunkStream(0.0), "BadDuration");
  EXPECT_HASR_ERROR(ChunkStream(10.0, -1.0), "BadDuration");
}

TEST(ChunkStream, TilesTheInput) {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 200; ++n) {
    const double total = testing::Uniform(rng, 0.01, 400.0);
    auto c = ChunkStream(total);
    EXPECT_EQ(c.front().first, 0.0);
    EXPECT_EQ(c.back().second, total);
    for (size_t i = 0; i < c.size(); ++i) {
      EXPECT_GT(c[i].second, c[i].first);
      EXPECT_LE(c[i].second - c[i].first, 30.0);
      if (i) {
        EXPECT_EQ(c[i].first, c[i - 1].second);
      }
    }
  }
}

// A chunk whose words cover [start, end) seconds at 50 frames per second.
DecodedChunk SpanChunk(const std::string &src, double start, double end, int words = 1) {
  DecodedChunk c;
  c.source_id = src;
  c.offset = start;
  const int32_t frames = static_cast<int32_t>(std::lround((end - start) * 50));
  for (int i = 0; i < words; ++i)
    c.words.push_back({"w" + std::to_string(i), frames * i / words, frames * (i + 1) / words});
  return c;
}

TEST(DeriveSegments, DurationFixture) {
  std::vector<DecodedChunk> chunks{SpanChunk("s3", 0, 3), SpanChunk("s12", 0, 12, 6),
                                   SpanChunk("s31", 0, 31, 10)};
  auto segs = DeriveSegments(chunks);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].source_id, "s12");
  EXPECT_DOUBLE_EQ(segs[0].Duration(), 12.0);
  EXPECT_EQ(segs[0].words.size(), 6u);
}

TEST(DeriveSegments, MergesShortNeighbours) {
  std::vector<DecodedChunk> chunks{SpanChunk("a", 0, 4), SpanChunk("a", 5, 9)};
  auto segs = DeriveSegments(chunks);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_DOUBLE_EQ(segs[0].start, 0.0);
  EXPECT_DOUBLE_EQ(segs[0].end, 9.0);
  // Different sources never merge.
  chunks[1].source_id = "b";
  EXPECT_TRUE(DeriveSegments(chunks).empty());
  EXPECT_TRUE(DeriveSegments({}).empty());
}

TEST(DeriveSegments, SplitsAtSilence) {
  DecodedChunk c;
  c.source_id = "x";
  c.words = {{"a", 0, 300}, {"b", 300, 400}, {"c", 1000, 1500}};
  SegmentOptions o;
  o.max_dur = 10.0;
  auto cand = CandidateSegments({c}, o);
  ASSERT_EQ(cand.size(), 2u);
  EXPECT_EQ(cand[0].words, (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(cand[1].start, 20.0);
}

TEST(DeriveSegments, AlwaysWithinBounds) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 200; ++n) {
    std::vector<DecodedChunk> chunks;
    const int sources = testing::RandInt(rng, 1, 3);
    for (int s = 0; s < sources; ++s) {
      const double total = testing::Uniform(rng, 1.0, 200.0);
      for (auto [b, e] : ChunkStream(total)) {
        DecodedChunk c;
        c.source_id = "src" + std::to_string(s);
        c.offset = b;
        int32_t f = 0;
        const int32_t last = static_cast<int32_t>((e - b) * 50);
        while (true) {
          f += testing::RandInt(rng, 0, 80);
          const int32_t len = testing::RandInt(rng, 5, 120);
          if (f + len > last) break;
          c.words.push_back({"w", f, f + len});
          f += len;
        }
        chunks.push_back(std::move(c));
      }
    }
    for (const auto &s : DeriveSegments(chunks)) {
      EXPECT_GE(s.Duration(), 5.0 - 1e-9);
      EXPECT_LE(s.Duration(), 30.0 + 1e-9);
      EXPECT_EQ(s.words.size(), s.word_times.size());
    }
  }
}

TEST(Manifest, SegmentIdFormat) {
  EXPECT_EQ(SegmentId("utt1", 12.5, 20.0), "utt1-0001250-0002000");
  EXPECT_EQ(SegmentId("r", 0.0, 0.014), "r-0000000-0000001");
}

TEST(Manifest, DuplicatesAndMerge) {
  Manifest a, b;
  ManifestRow r{"x-1", "x.wav", 0, 1, "hi", Provenance::kManual};
  a.Add(r);
  EXPECT_HASR_ERROR(a.Add(r), "DuplicateSegment");
  r.segment_id = "x-2";
  b.Add(r);
  a.Merge(b);
  EXPECT_EQ(a.Size(), 2u);
  EXPECT_HASR_ERROR(a.Merge(b), "DuplicateSegment");

  std::stringstream ss;
  a.Write(ss);
  auto back = Manifest::Read(ss);
  ASSERT_EQ(back.Size(), 2u);
  EXPECT_EQ(back.Rows()[1].segment_id, "x-2");
  EXPECT_EQ(back.Rows()[0].transcript, "hi");
  std::istringstream bad("nonsense\n");
  EXPECT_HASR_ERROR(Manifest::Read(bad), "BadManifest");
}

TEST(Manifest, PseudoRows) {
  Segment s{"src", 5.0, 12.0, {"a", "b"}, {}};
  auto m = MakePseudoManifest({s}, {{"src", "/data/src.wav"}});
  ASSERT_EQ(m.Size(), 1u);
  EXPECT_EQ(m.Rows()[0].segment_id, "src-0000500-0001200");
  EXPECT_EQ(m.Rows()[0].path, "/data/src.wav");
  EXPECT_EQ(m.Rows()[0].transcript, "a b");
  EXPECT_EQ(m.Rows()[0].provenance, Provenance::kPseudo);
}

Wave Sine(double freq, double amp, double seconds, int32_t rate = 16000) {
  Wave w;
  w.sample_rate = rate;
  const size_t n = static_cast<size_t>(seconds * rate);
  for (size_t i = 0; i < n; ++i)
    w.samples.push_back(static_cast<int16_t>(
        std::lround(amp * std::sin(2 * std::numbers::pi * freq * i / rate))));
  return w;
}

TEST(Augment, ZeroDbDoublesPower) {
  // Tones at different whole-cycle frequencies are uncorrelated over 1 s.
  const Wave s = Sine(440, 8000, 1.0), v = Sine(1000, 8000, 1.0);
  const Wave mix = MixAtSnr(s, v, 0.0);
  EXPECT_NEAR(SignalPower(mix) / SignalPower(s), 2.0, 0.02);
}

TEST(Augment, SnrIsHonoured) {
  const Wave s = Sine(440, 6000, 1.0), v = Sine(1000, 3000, 1.0);
  for (double snr : {20.0, 10.0, 5.0}) {
    const Wave mix = MixAtSnr(s, v, snr);
    std::vector<double> noise(mix.samples.size());
    for (size_t i = 0; i < noise.size(); ++i)
      noise[i] = static_cast<double>(mix.samples[i]) - s.samples[i];
    EXPECT_NEAR(10 * std::log10(SignalPower(s) / SignalPower(noise)), snr, 0.1);
  }
  EXPECT_EQ(MixAtSnr(s, v, std::numeric_limits<double>::infinity()), s);
}

TEST(Augment, ClippingRescales) {
  const Wave s = Sine(440, 30000, 0.1), v = Sine(1000, 30000, 0.1);
  const Wave mix = MixAtSnr(s, v, 0.0);
  int peak = 0;
  for (int16_t x : mix.samples) peak = std::max(peak, std::abs(static_cast<int>(x)));
  EXPECT_LE(peak, 32767);
  EXPECT_GT(peak, 30000);
}

TEST(Augment, SeededAndOrderIndependent) {
  std::vector<Wave> pool{Sine(300, 2000, 0.7), Sine(700, 1500, 1.3), Sine(900, 500, 0.2)};
  const Wave s = Sine(440, 5000, 0.5);
  AugmentOptions o;
  o.seed = 11;
  auto a = AugmentNoise(s, pool, o, "utt7");
  AugmentNoise(s, pool, o, "other");
  auto b = AugmentNoise(s, pool, o, "utt7");
  ASSERT_EQ(a.size(), 3u);
  for (size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].wave, b[k].wave);
    EXPECT_EQ(a[k].snr_db, o.snr_db[k]);
  }
  o.seed = 12;
  auto c = AugmentNoise(s, pool, o, "utt7");
  bool differs = false;
  for (size_t k = 0; k < a.size(); ++k) differs |= !(a[k].wave == c[k].wave);
  EXPECT_TRUE(differs);
}

TEST(Augment, RowsAndErrors) {
  ManifestRow r{"u1", "u1.wav", 0, 2, "a b", Provenance::kManual};
  auto rows = AugmentedRows(r, {"p1", "p2", "p3"});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].segment_id, "u1");
  EXPECT_EQ(rows[3].segment_id, "u1-aug3");
  EXPECT_EQ(rows[2].path, "p2");
  EXPECT_EQ(rows[1].provenance, Provenance::kAugmented);
  EXPECT_EQ(rows[1].transcript, "a b");

  const Wave s = Sine(440, 5000, 0.5);
  Wave silent = s;
  std::fill(silent.samples.begin(), silent.samples.end(), 0);
  EXPECT_HASR_ERROR(MixAtSnr(silent, s, 5.0), "SilentAudio");
  EXPECT_HASR_ERROR(MixAtSnr(s, silent, 5.0), "SilentAudio");
  EXPECT_HASR_ERROR(MixAtSnr(s, Sine(440, 5000, 0.5, 8000), 5.0), "RateMismatch");
  EXPECT_HASR_ERROR(AugmentNoise(s, {}, {}, "u"), "EmptyNoisePool");
}

TEST(Wave, RoundTrip) {
  const Wave s = Sine(123, 7000, 0.25, 8000);
  std::stringstream ss;
  WriteWave(s, ss);
  EXPECT_EQ(ReadWave(ss), s);
  std::istringstream bad("RIFF....WAVEjunk");
  EXPECT_HASR_ERROR(ReadWave(bad), "BadWave");
}

}  // namespace
}  // namespace hasr
