// src/segment.cc

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

#include "hasr/segment.h"

#include <algorithm>
#include <cmath>

#include "hasr/error.h"

namespace hasr {

namespace {

// Absorbs rounding in frame-to-second conversion at the inclusive bounds.
const double kDurationTolerance = 1e-9;

}  // namespace

std::vector<std::pair<double, double>> ChunkStream(double total_duration, double chunk) {
  if (!(total_duration > 0.0) || !std::isfinite(total_duration))
    throw Error("BadDuration", "total duration must be positive");
  if (!(chunk > 0.0) || !std::isfinite(chunk))
    throw Error("BadDuration", "chunk length must be positive");
  std::vector<std::pair<double, double>> windows;
  for (int64_t k = 0;; ++k) {
    const double start = static_cast<double>(k) * chunk;
    if (start >= total_duration) break;
    windows.emplace_back(start, std::min(static_cast<double>(k + 1) * chunk, total_duration));
  }
  return windows;
}

std::vector<Segment> CandidateSegments(const std::vector<DecodedChunk> &chunks,
                                       const SegmentOptions &opts) {
  if (!(opts.frame_rate > 0.0))
    throw Error("BadConfig", "frame rate must be positive");
  std::vector<Segment> pieces;
  for (const auto &chunk : chunks) {
    Segment cur;
    for (const auto &w : chunk.words) {
      const double b = chunk.offset + w.start_frame / opts.frame_rate;
      const double e = chunk.offset + w.end_frame / opts.frame_rate;
      if (!cur.words.empty() && b - cur.end >= opts.silence_gap) {
        pieces.push_back(std::move(cur));
        cur = Segment();
      }
      if (cur.words.empty()) {
        cur.source_id = chunk.source_id;
        cur.start = b;
      }
      cur.words.push_back(w.word);
      cur.word_times.emplace_back(b, e);
      cur.end = std::max(cur.end, e);
    }
    if (!cur.words.empty()) pieces.push_back(std::move(cur));
  }

  std::vector<Segment> merged;
  for (auto &p : pieces) {
    if (!merged.empty()) {
      Segment &last = merged.back();
      if (last.source_id == p.source_id && p.start >= last.start &&
          p.end - last.start <= opts.max_dur + kDurationTolerance) {
        last.words.insert(last.words.end(), p.words.begin(), p.words.end());
        last.word_times.insert(last.word_times.end(), p.word_times.begin(),
                               p.word_times.end());
        last.end = std::max(last.end, p.end);
        continue;
      }
    }
    merged.push_back(std::move(p));
  }
  return merged;
}

std::vector<Segment> DeriveSegments(const std::vector<DecodedChunk> &chunks,
                                    const SegmentOptions &opts) {
  std::vector<Segment> out;
  for (auto &s : CandidateSegments(chunks, opts)) {
    const double d = s.Duration();
    if (d >= opts.min_dur - kDurationTolerance && d <= opts.max_dur + kDurationTolerance)
      out.push_back(std::move(s));
  }
  return out;
}

}  // namespace hasr
