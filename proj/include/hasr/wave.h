// include/hasr/wave.h

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

#ifndef HASR_WAVE_H_
#define HASR_WAVE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hasr {

/// 16-bit PCM mono audio.
struct Wave {
  int32_t sample_rate = 16000;
  std::vector<int16_t> samples;

  double Duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  bool operator==(const Wave &other) const = default;
};

/// RIFF/WAVE reader; only 16-bit PCM mono is accepted. Throws
/// Error("BadWave").
Wave ReadWave(std::istream &is);
Wave ReadWave(const std::string &path);
void WriteWave(const Wave &wave, std::ostream &os);
void WriteWave(const Wave &wave, const std::string &path);

}  // namespace hasr

#endif  // HASR_WAVE_H_
