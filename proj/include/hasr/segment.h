// include/hasr/segment.h

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

#ifndef HASR_SEGMENT_H_
#define HASR_SEGMENT_H_

#include <string>
#include <utility>
#include <vector>

#include "hasr/decoder.h"

namespace hasr {

/// Consecutive [k * chunk, (k + 1) * chunk) windows covering
/// [0, total_duration); the last one is cut at total_duration. Throws
/// Error("BadDuration") for non-positive arguments.
std::vector<std::pair<double, double>> ChunkStream(double total_duration,
                                                   double chunk = 30.0);

/// Decoder output for one chunk of a source recording.
struct DecodedChunk {
  std::string source_id;
  double offset = 0.0;             // chunk start in seconds
  std::vector<WordTiming> words;   // frame times relative to the chunk
};

struct Segment {
  std::string source_id;
  double start = 0.0;
  double end = 0.0;
  std::vector<std::string> words;
  std::vector<std::pair<double, double>> word_times;  // absolute seconds
  double Duration() const { return end - start; }
};

struct SegmentOptions {
  double frame_rate = 50.0;
  double min_dur = 5.0;
  double max_dur = 30.0;
  double silence_gap = 0.5;  // split where words are this far apart
};

/// Splits chunks at inter-word gaps and chunk boundaries, greedily merges
/// neighbours from the same source while the result stays within max_dur,
/// then keeps segments with min_dur <= duration <= max_dur.
std::vector<Segment> DeriveSegments(const std::vector<DecodedChunk> &chunks,
                                    const SegmentOptions &opts = {});

/// Same split and merge, without the final duration filter.
std::vector<Segment> CandidateSegments(const std::vector<DecodedChunk> &chunks,
                                       const SegmentOptions &opts = {});

}  // namespace hasr

#endif  // HASR_SEGMENT_H_
