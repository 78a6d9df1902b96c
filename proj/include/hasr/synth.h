// include/hasr/synth.h

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

#ifndef HASR_SYNTH_H_
#define HASR_SYNTH_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hasr/graph.h"
#include "hasr/posteriorgram.h"

namespace hasr {

// Synthetic language and acoustic scores for end-to-end checks without
// audio: a known bigram word generator plus posteriorgrams drawn from the
// true class sequence with controlled noise.

struct SyntheticLanguageOptions {
  int32_t vocab_size = 30;
  int32_t min_word_len = 2;
  int32_t max_word_len = 5;
  std::string alphabet = "acdehilnorst";
  int32_t successors = 3;         // strongly preferred next words per word
  double successor_mass = 0.85;   // probability shared by those successors
  double end_prob = 0.15;         // P(</s>) after any word
  int32_t max_words = 12;
};

struct SyntheticLanguage {
  std::vector<std::string> words;
  /// next[i][j] = P(word j | previous i); row 0 is <s>, row i + 1 is word i.
  /// The extra last column is </s>.
  std::vector<std::vector<double>> next;
};

/// Throws Error("BadConfig") if the alphabet cannot yield enough words.
SyntheticLanguage MakeSyntheticLanguage(const SyntheticLanguageOptions &opts,
                                        uint64_t seed);

/// Sentences of 1..max_words words drawn from the generator.
std::vector<std::vector<std::string>> SampleSentences(const SyntheticLanguage &lang,
                                                      size_t count, int32_t max_words,
                                                      std::mt19937_64 &rng);

/// Tied class of every unit, with left context carried across words from
/// kNoLeftContext. Throws Error("UnknownWord") for words missing from the
/// lexicon (first pronunciation is used).
std::vector<int32_t> TrueClassSequence(const std::vector<std::string> &words,
                                       const Lexicon &lexicon, const BiphoneTying &tying);

struct PosteriorSynthOptions {
  int32_t min_frames = 1;      // frames per class occurrence
  int32_t max_frames = 3;
  double margin = 4.0;         // logit boost of the emitted class
  double noise_stddev = 1.0;   // Gaussian logit noise
  double label_noise = 0.1;    // probability that a frame boosts a random class
  double frame_rate = 50.0;
};

/// Log-softmax scores for one utterance.
Posteriorgram SynthesizePosteriorgram(const std::string &utt_id,
                                      const std::vector<int32_t> &classes,
                                      int32_t num_classes,
                                      const PosteriorSynthOptions &opts,
                                      std::mt19937_64 &rng);

}  // namespace hasr

#endif  // HASR_SYNTH_H_
