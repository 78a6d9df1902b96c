// tools/hasr-synth.cc

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

// Generates synthetic corpora and posteriorgrams for smoke tests.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>

#include "hasr/error.h"
#include "hasr/graph.h"
#include "hasr/posteriorgram.h"
#include "hasr/synth.h"
#include "hasr/util/io-utils.h"
#include "hasr/util/text-utils.h"

namespace fs = std::filesystem;

int main(int argc, char *argv[]) {
  CLI::App app("Synthetic data for the hasr toolkit", "hasr-synth");
  app.require_subcommand(1);

  hasr::SyntheticLanguageOptions lang_opts;
  uint64_t lang_seed = 0, seed = 1;
  size_t count = 100;
  std::string output, prefix = "utt";
  auto *text = app.add_subcommand("text", "Sample sentences from a random bigram language");
  text->add_option("--lang-seed", lang_seed, "Seed of the language");
  text->add_option("--seed", seed, "Seed of the sample");
  text->add_option("--count", count, "Sentences");
  text->add_option("--vocab-size", lang_opts.vocab_size, "Words in the language");
  text->add_option("--prefix", prefix, "Utterance id prefix");
  text->add_option("--output", output, "Corpus file")->required();

  std::string graph_dir, input;
  hasr::PosteriorSynthOptions pg_opts;
  bool binary = false;
  auto *post = app.add_subcommand("posteriors", "Posteriorgrams for a corpus and a graph");
  post->add_option("--graph-dir", graph_dir, "Directory written by hasr build-graph")->required();
  post->add_option("--input", input, "Corpus of words")->required();
  post->add_option("--output", output, "Posteriorgram file")->required();
  post->add_option("--seed", seed, "Noise seed");
  post->add_option("--margin", pg_opts.margin, "Log-odds of the true class");
  post->add_option("--label-noise", pg_opts.label_noise, "Probability of a wrong peak");
  post->add_flag("--binary", binary, "Binary output");

  CLI11_PARSE(app, argc, argv);
  try {
    std::mt19937_64 rng(seed);
    if (text->parsed()) {
      const auto lang = hasr::MakeSyntheticLanguage(lang_opts, lang_seed);
      const auto sents = hasr::SampleSentences(lang, count, lang_opts.max_words, rng);
      hasr::AtomicWriteFile(output, [&](std::ostream &os) {
        for (size_t i = 0; i < sents.size(); ++i)
          os << prefix << i << '\t' << hasr::Join(sents[i], " ") << '\n';
      });
    } else {
      const fs::path dir(graph_dir);
      const auto lexicon = hasr::Lexicon::Read((dir / "lexicon.txt").string());
      const auto tying = hasr::BiphoneTying::Read((dir / "tying.txt").string());
      std::vector<hasr::Posteriorgram> pgs;
      for (const auto &line : hasr::ReadCorpus(input)) {
        auto classes = hasr::TrueClassSequence(hasr::SplitWhitespace(line.text), lexicon, tying);
        if (classes.empty()) continue;
        pgs.push_back(hasr::SynthesizePosteriorgram(line.id, classes, tying.NumClasses(),
                                                    pg_opts, rng));
      }
      hasr::WritePosteriorgrams(pgs, output, binary);
    }
  } catch (const hasr::Error &e) {
    std::cerr << "ERROR " << e.code() << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
