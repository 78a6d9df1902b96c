// include/hasr/posteriorgram.h

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

#ifndef HASR_POSTERIORGRAM_H_
#define HASR_POSTERIORGRAM_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hasr {

/// Frames x classes matrix of acoustic log-scores for one utterance.
/// Column k holds the score of tied class k, which the decoding graph
/// consumes as input label k + 1.
struct Posteriorgram {
  std::string utt_id;
  double frame_rate = 50.0;
  int32_t num_frames = 0;
  int32_t num_classes = 0;
  std::vector<float> data;  // row-major

  Posteriorgram() = default;
  Posteriorgram(std::string id, int32_t frames, int32_t classes,
                double rate = 50.0);

  float operator()(int32_t frame, int32_t cls) const {
    return data[static_cast<size_t>(frame) * num_classes + cls];
  }
  float &operator()(int32_t frame, int32_t cls) {
    return data[static_cast<size_t>(frame) * num_classes + cls];
  }
  double Duration() const { return num_frames / frame_rate; }

  /// Throws Error("MatrixShape") for empty or inconsistent dimensions and
  /// Error("NonFiniteScore") for NaN or infinite entries.
  void Validate() const;

  bool operator==(const Posteriorgram &other) const = default;
};

/// Text form per utterance: header "utt-id n_frames n_classes frame_rate"
/// followed by n_frames rows. Binary form: the bytes "\0B" once at the start
/// of the file, then per utterance the same header line followed by
/// little-endian float32 values. Values round-trip exactly in both forms.
void WritePosteriorgrams(const std::vector<Posteriorgram> &pgs, std::ostream &os,
                         bool binary);
void WritePosteriorgrams(const std::vector<Posteriorgram> &pgs,
                         const std::string &path, bool binary);
/// Detects the form from the first bytes. Throws Error("MatrixShape").
std::vector<Posteriorgram> ReadPosteriorgrams(std::istream &is);
std::vector<Posteriorgram> ReadPosteriorgrams(const std::string &path);

}  // namespace hasr

#endif  // HASR_POSTERIORGRAM_H_
