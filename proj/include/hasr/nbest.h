// include/hasr/nbest.h

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

#ifndef HASR_NBEST_H_
#define HASR_NBEST_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "hasr/lattice.h"

namespace hasr {

struct NBestEntry {
  std::vector<std::string> words;
  std::vector<int32_t> word_frames;  // frame at which each word starts
  double am_cost = 0.0;
  double lm_cost = 0.0;   // first-pass graph cost
  double total = 0.0;     // am_cost + lm_cost until rescored
};

inline constexpr size_t kAllPaths = std::numeric_limits<size_t>::max();

/// The n cheapest distinct word sequences of the lattice, cheapest first,
/// each with the costs of its best path. Throws Error("BadN") for n == 0.
std::vector<NBestEntry> NBest(const Lattice &lat, size_t n);

/// "utt-id rank am_cost lm_cost word1 word2 ..." per line, rank from 1.
void WriteNBest(const std::vector<std::pair<std::string, std::vector<NBestEntry>>> &lists,
                std::ostream &os);
void WriteNBest(const std::vector<std::pair<std::string, std::vector<NBestEntry>>> &lists,
                const std::string &path);
/// Groups consecutive lines by utterance id. Throws Error("BadNBest").
std::vector<std::pair<std::string, std::vector<NBestEntry>>> ReadNBest(std::istream &is);
std::vector<std::pair<std::string, std::vector<NBestEntry>>> ReadNBest(
    const std::string &path);

}  // namespace hasr

#endif  // HASR_NBEST_H_
