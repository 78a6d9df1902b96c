// tests/subword-test.cc

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
#include <set>
#include <sstream>

#include "expect-error.h"
#include "hasr/subword.h"
#include "hasr/synth.h"
#include "hasr/util/utf8.h"

namespace hasr {
namespace {

const std::string kB = SubwordModel::kDefaultBoundary;

// Pair counts over the corpus, computed directly from the characters.
std::map<std::pair<std::string, std::string>, int> BrutePairCounts(
    const std::vector<std::vector<std::string>> &corpus) {
  std::map<std::pair<std::string, std::string>, int> counts;
  for (const auto &utt : corpus)
    for (const auto &w : utt) {
      auto cs = SplitCodepoints(w);
      for (size_t i = 0; i + 1 < cs.size(); ++i) ++counts[{cs[i], cs[i + 1]}];
    }
  return counts;
}

TEST(TrainBpe, SingleMergeMatchesPairCounts) {
  std::vector<std::vector<std::string>> corpus{{"aa", "aa", "ab"}};
  auto counts = BrutePairCounts(corpus);
  auto best = std::max_element(counts.begin(), counts.end(),
                               [](auto &x, auto &y) { return x.second < y.second; });
  ASSERT_EQ(best->first, std::make_pair(std::string("a"), std::string("a")));
  auto m = SubwordModel::Train(corpus, 3);  // base {a, b} + 1
  ASSERT_EQ(m.merges().size(), 1u);
  EXPECT_EQ(m.merges()[0], best->first);
  EXPECT_TRUE(m.InInventory("aa"));
}

TEST(TrainBpe, BaseSizeGivesNoMerges) {
  auto m = SubwordModel::Train({{"aa", "aa", "ab"}}, 2);
  EXPECT_TRUE(m.merges().empty());
  EXPECT_EQ(m.inventory().size(), 2u);
}

TEST(TrainBpe, TooSmall) {
  EXPECT_HASR_ERROR(SubwordModel::Train({{"abc"}}, 2), "VocabTooSmall");
}

TEST(TrainBpe, InventoryInvariants) {
  std::mt19937_64 rng(3);
  std::vector<std::vector<std::string>> corpus(40);
  for (auto &u : corpus)
    for (int k = 0; k < 6; ++k) {
      std::string w;
      for (int n = std::uniform_int_distribution<int>(1, 6)(rng); n > 0; --n)
        w += static_cast<char>('a' + std::uniform_int_distribution<int>(0, 4)(rng));
      u.push_back(w);
    }
  for (size_t vs : {5, 10, 20, 60}) {
    auto m = SubwordModel::Train(corpus, vs);
    EXPECT_LE(m.inventory().size(), vs);
    std::set<std::string> base;
    for (const auto &u : corpus)
      for (const auto &w : u)
        for (const auto &c : SplitCodepoints(w)) base.insert(c);
    std::set<std::string> expect = base;
    for (const auto &[l, r] : m.merges()) expect.insert(l + r);
    EXPECT_EQ(std::set<std::string>(m.inventory().begin(), m.inventory().end()), expect);
    EXPECT_EQ(m.inventory().size(), base.size() + m.merges().size());
  }
}

TEST(TrainBpe, TenThousandUnitInventory) {
  SyntheticLanguageOptions lo;
  lo.vocab_size = 400;
  auto lang = MakeSyntheticLanguage(lo, 8);
  std::mt19937_64 rng(8);
  auto corpus = SampleSentences(lang, 3000, lo.max_words, rng);
  auto m = SubwordModel::Train(corpus, 10000);
  EXPECT_LE(m.inventory().size(), 10000u);
  EXPECT_GT(m.merges().size(), 0u);
  for (const auto &s : corpus) EXPECT_EQ(m.Decode(m.Encode(s)), s);
}

TEST(TrainBpe, Deterministic) {
  std::vector<std::vector<std::string>> corpus{{"abab", "baba", "abba", "cab"}, {"bcab"}};
  auto a = SubwordModel::Train(corpus, 8);
  auto b = SubwordModel::Train(corpus, 8);
  EXPECT_EQ(a.merges(), b.merges());
  std::ostringstream sa, sb;
  a.Write(sa);
  b.Write(sb);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Encode, Examples) {
  auto m = SubwordModel::Train({{"aa", "aa", "ab"}}, 3);
  EXPECT_EQ(m.Encode({"aab"}), (std::vector<std::string>{kB + "aa", "b"}));
  EXPECT_TRUE(m.Encode({}).empty());
  EXPECT_EQ(m.Encode({"q"}), (std::vector<std::string>{kB + "<unk>"}));
}

TEST(Decode, Examples) {
  auto m = SubwordModel::Train({{"aa", "aa", "ab"}}, 3);
  EXPECT_EQ(m.Decode({kB + "aa", "b"}), (std::vector<std::string>{"aab"}));
  EXPECT_TRUE(m.Decode({}).empty());
  EXPECT_EQ(m.Decode({kB + "a", kB + "b"}), (std::vector<std::string>{"a", "b"}));
  EXPECT_HASR_ERROR(m.Decode({"zz"}), "UnknownUnit");
}

TEST(Encode, RoundTripAndMonotoneCoverage) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> letters{"a", "b", "c", "d", "è", "ò"};
  std::vector<std::vector<std::string>> corpus(30);
  std::vector<std::string> all;
  for (auto &u : corpus)
    for (int k = 0; k < 5; ++k) {
      std::string w;
      for (int n = std::uniform_int_distribution<int>(1, 7)(rng); n > 0; --n)
        w += letters[std::uniform_int_distribution<size_t>(0, letters.size() - 1)(rng)];
      u.push_back(w);
      all.push_back(w);
    }
  std::vector<size_t> prev_len(all.size(), SIZE_MAX);
  for (size_t vs = letters.size(); vs <= 60; vs += 6) {
    auto m = SubwordModel::Train(corpus, vs);
    for (size_t i = 0; i < all.size(); ++i) {
      auto units = m.Encode({all[i]});
      EXPECT_EQ(m.Decode(units), std::vector<std::string>{all[i]});
      EXPECT_LE(units.size(), prev_len[i]) << all[i] << " at vocab " << vs;
      prev_len[i] = units.size();
    }
  }
}

TEST(SubwordModel, WriteReadRoundTrip) {
  auto m = SubwordModel::Train({{"abab", "baba", "abba"}}, 5);
  std::stringstream ss;
  m.Write(ss);
  auto r = SubwordModel::Read(ss);
  EXPECT_EQ(r.merges(), m.merges());
  EXPECT_EQ(r.inventory(), m.inventory());
  EXPECT_EQ(r.Encode({"abba", "zz"}), m.Encode({"abba", "zz"}));
}

}  // namespace
}  // namespace hasr
