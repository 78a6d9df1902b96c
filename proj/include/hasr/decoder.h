// include/hasr/decoder.h

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

#ifndef HASR_DECODER_H_
#define HASR_DECODER_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hasr/fst.h"
#include "hasr/lattice.h"
#include "hasr/posteriorgram.h"

namespace hasr {

struct DecodeConfig {
  double beam = 16.0;
  int32_t max_active = 7000;
  double acoustic_scale = 1.0;
  double lattice_beam = 8.0;
  /// Frame labels treated as silence when computing word end times.
  std::set<Label> silence_labels;

  /// Throws Error("BadConfig").
  void Validate() const;
};

/// Word with the frames it spans, [start_frame, end_frame).
struct WordTiming {
  std::string word;
  int32_t start_frame = 0;
  int32_t end_frame = 0;
};

struct DecodeResult {
  std::vector<Label> words;           // output labels of the best path
  std::vector<WordTiming> timings;    // one per word
  std::vector<Label> alignment;       // frame label consumed at each frame
  double cost = 0.0;                  // total cost including final weight
  double am_cost = 0.0;
  double lm_cost = 0.0;
  /// True when no final state was reached at the last frame; the result is
  /// then the best partial path.
  bool forced_final = false;
  Lattice lattice;
};

/// Token-passing Viterbi beam search. An emitting arc with input label k
/// consuming frame t costs (graph weight) - acoustic_scale * pg(t, k - 1);
/// arcs with epsilon input are followed without consuming a frame. Ties go
/// to the lower graph state id.
/// Throws Error("ClassMismatch") when the graph uses labels beyond the
/// posteriorgram columns and Error("DecodeDeadEnd") when every token is
/// pruned or no path can consume the frames.
DecodeResult Decode(const WeightedFst &graph, const Posteriorgram &pg,
                    const DecodeConfig &cfg);

/// Words of a result as strings, through the graph's output symbols.
std::vector<std::string> WordStrings(const WeightedFst &graph,
                                     const std::vector<Label> &words);

}  // namespace hasr

#endif  // HASR_DECODER_H_
