// src/synth.cc

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

#include "hasr/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hasr/error.h"
#include "hasr/util/utf8.h"

namespace hasr {

SyntheticLanguage MakeSyntheticLanguage(const SyntheticLanguageOptions &opts,
                                        uint64_t seed) {
  const auto letters = SplitCodepoints(opts.alphabet);
  if (opts.vocab_size < 1 || letters.empty() || opts.min_word_len < 1 ||
      opts.max_word_len < opts.min_word_len)
    throw Error("BadConfig", "invalid synthetic language options");
  double space = 0.0;
  for (int32_t l = opts.min_word_len; l <= opts.max_word_len; ++l)
    space += std::pow(static_cast<double>(letters.size()), l);
  if (space < 2.0 * opts.vocab_size)
    throw Error("BadConfig", "alphabet and word lengths allow too few distinct words");
  if (!(opts.end_prob > 0.0 && opts.end_prob < 1.0) || opts.successor_mass < 0.0 ||
      opts.successor_mass > 1.0)
    throw Error("BadConfig", "probabilities must lie in (0, 1)");

  std::mt19937_64 rng(seed);
  SyntheticLanguage lang;
  std::set<std::string> seen;
  std::uniform_int_distribution<int32_t> len_dist(opts.min_word_len, opts.max_word_len);
  std::uniform_int_distribution<size_t> letter_dist(0, letters.size() - 1);
  while (static_cast<int32_t>(lang.words.size()) < opts.vocab_size) {
    std::string w;
    for (int32_t i = len_dist(rng); i > 0; --i) w += letters[letter_dist(rng)];
    if (seen.insert(w).second) lang.words.push_back(w);
  }

  const int32_t V = opts.vocab_size;
  const int32_t k = std::min(opts.successors, V);
  std::vector<int32_t> ids(V);
  std::iota(ids.begin(), ids.end(), 0);
  for (int32_t row = 0; row <= V; ++row) {
    std::vector<double> p(V + 1, 0.0);
    const double word_mass = row == 0 ? 1.0 : 1.0 - opts.end_prob;
    std::shuffle(ids.begin(), ids.end(), rng);
    const double rest = V > k ? (1.0 - opts.successor_mass) / (V - k) : 0.0;
    const double pref = (k == V ? 1.0 : opts.successor_mass) / k;
    for (int32_t i = 0; i < V; ++i) p[ids[i]] = word_mass * (i < k ? pref : rest);
    p[V] = row == 0 ? 0.0 : opts.end_prob;
    lang.next.push_back(std::move(p));
  }
  return lang;
}

std::vector<std::vector<std::string>> SampleSentences(const SyntheticLanguage &lang,
                                                      size_t count, int32_t max_words,
                                                      std::mt19937_64 &rng) {
  const int32_t V = static_cast<int32_t>(lang.words.size());
  std::vector<std::vector<std::string>> out;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (size_t n = 0; n < count; ++n) {
    std::vector<std::string> sent;
    int32_t row = 0;
    while (static_cast<int32_t>(sent.size()) < max_words) {
      const auto &p = lang.next[row];
      double x = u(rng), acc = 0.0;
      int32_t pick = V;
      for (int32_t j = 0; j <= V; ++j) {
        acc += p[j];
        if (x < acc) {
          pick = j;
          break;
        }
      }
      if (pick == V) {
        if (sent.empty()) continue;
        break;
      }
      sent.push_back(lang.words[pick]);
      row = pick + 1;
    }
    out.push_back(std::move(sent));
  }
  return out;
}

std::vector<int32_t> TrueClassSequence(const std::vector<std::string> &words,
                                       const Lexicon &lexicon, const BiphoneTying &tying) {
  std::map<std::string, const std::vector<std::string> *> pron;
  for (const auto &[w, units] : lexicon.entries) pron.emplace(w, &units);
  std::vector<int32_t> classes;
  std::string left = kNoLeftContext;
  for (const auto &w : words) {
    auto it = pron.find(w);
    if (it == pron.end()) throw Error("UnknownWord", "word '" + w + "' is not in the lexicon");
    for (const auto &u : *it->second) {
      classes.push_back(tying.Class(left, u));
      left = u;
    }
  }
  return classes;
}

Posteriorgram SynthesizePosteriorgram(const std::string &utt_id,
                                      const std::vector<int32_t> &classes,
                                      int32_t num_classes,
                                      const PosteriorSynthOptions &opts,
                                      std::mt19937_64 &rng) {
  if (classes.empty() || num_classes < 1 || opts.min_frames < 1 ||
      opts.max_frames < opts.min_frames)
    throw Error("BadConfig", "invalid posteriorgram synthesis request");
  std::uniform_int_distribution<int32_t> dur(opts.min_frames, opts.max_frames);
  std::uniform_int_distribution<int32_t> any_class(0, num_classes - 1);
  std::normal_distribution<double> noise(0.0, opts.noise_stddev);
  std::bernoulli_distribution flip(opts.label_noise);

  std::vector<std::vector<double>> rows;
  for (int32_t c : classes) {
    for (int32_t d = dur(rng); d > 0; --d) {
      std::vector<double> logits(num_classes);
      for (double &x : logits) x = opts.noise_stddev > 0 ? noise(rng) : 0.0;
      const int32_t target = flip(rng) ? any_class(rng) : c;
      logits[target] += opts.margin;
      const double mx = *std::max_element(logits.begin(), logits.end());
      double sum = 0.0;
      for (double x : logits) sum += std::exp(x - mx);
      const double log_norm = mx + std::log(sum);
      for (double &x : logits) x -= log_norm;
      rows.push_back(std::move(logits));
    }
  }
  Posteriorgram pg(utt_id, static_cast<int32_t>(rows.size()), num_classes, opts.frame_rate);
  for (size_t t = 0; t < rows.size(); ++t)
    for (int32_t k = 0; k < num_classes; ++k)
      pg(static_cast<int32_t>(t), k) = static_cast<float>(rows[t][k]);
  return pg;
}

}  // namespace hasr
