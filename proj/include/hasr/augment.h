// include/hasr/augment.h

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

#ifndef HASR_AUGMENT_H_
#define HASR_AUGMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hasr/manifest.h"
#include "hasr/wave.h"

namespace hasr {

/// Mean squared sample value.
double SignalPower(const std::vector<double> &x);
double SignalPower(const Wave &w);

/// Adds `noise`, looped from `noise_offset` and trimmed to the signal
/// length, scaled so that 10 log10(P_signal / P_noise) equals snr_db. An
/// infinite snr_db adds nothing. If the mix would clip, the whole output is
/// scaled down to full range. Throws Error("RateMismatch") or
/// Error("SilentAudio").
Wave MixAtSnr(const Wave &signal, const Wave &noise, double snr_db,
              size_t noise_offset = 0);

struct AugmentOptions {
  std::vector<double> snr_db{20.0, 15.0, 10.0, 5.0};  // used round-robin per copy
  int32_t copies = 3;
  uint64_t seed = 0;
};

struct NoisyCopy {
  Wave wave;
  double snr_db;
  size_t noise_index;
  size_t noise_offset;
};

/// `copies` noisy versions of one utterance. The noise choice and offset
/// come from a generator seeded by (seed, utt_id), so results do not depend
/// on the order in which utterances are processed. Throws
/// Error("EmptyNoisePool"), Error("BadConfig"), Error("RateMismatch") or
/// Error("SilentAudio").
std::vector<NoisyCopy> AugmentNoise(const Wave &wave, const std::vector<Wave> &noises,
                                    const AugmentOptions &opts, const std::string &utt_id);

/// The original row followed by one augmented row per copy; copy k gets id
/// "<id>-aug<k>" and path `copy_paths[k]`.
std::vector<ManifestRow> AugmentedRows(const ManifestRow &original,
                                       const std::vector<std::string> &copy_paths);

}  // namespace hasr

#endif  // HASR_AUGMENT_H_
