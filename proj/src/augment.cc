// src/augment.cc

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

#include "hasr/augment.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "hasr/error.h"

namespace hasr {

double SignalPower(const std::vector<double> &x) {
  if (x.empty()) return 0.0;
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return sum / static_cast<double>(x.size());
}

double SignalPower(const Wave &w) {
  return SignalPower(std::vector<double>(w.samples.begin(), w.samples.end()));
}

Wave MixAtSnr(const Wave &signal, const Wave &noise, double snr_db, size_t noise_offset) {
  if (signal.sample_rate != noise.sample_rate)
    throw Error("RateMismatch", "signal rate " + std::to_string(signal.sample_rate) +
                                    " Hz differs from noise rate " +
                                    std::to_string(noise.sample_rate) + " Hz");
  const size_t n = signal.samples.size();
  std::vector<double> s(signal.samples.begin(), signal.samples.end());
  const double ps = SignalPower(s);
  if (ps == 0.0) throw Error("SilentAudio", "signal has zero power");
  if (noise.samples.empty()) throw Error("SilentAudio", "noise has no samples");
  std::vector<double> v(n);
  const size_t m = noise.samples.size();
  for (size_t i = 0; i < n; ++i) v[i] = noise.samples[(noise_offset + i) % m];
  const double pn = SignalPower(v);
  if (pn == 0.0) throw Error("SilentAudio", "noise has zero power over the signal span");

  const double gain =
      std::isinf(snr_db) && snr_db > 0 ? 0.0 : std::sqrt(ps / (pn * std::pow(10.0, snr_db / 10.0)));
  double peak = 0.0;
  for (size_t i = 0; i < n; ++i) {
    s[i] += gain * v[i];
    peak = std::max(peak, std::fabs(s[i]));
  }
  const double limit = 32767.0;
  const double norm = peak > limit ? limit / peak : 1.0;
  Wave out;
  out.sample_rate = signal.sample_rate;
  out.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double y = std::clamp(std::nearbyint(s[i] * norm), -32768.0, 32767.0);
    out.samples[i] = static_cast<int16_t>(y);
  }
  return out;
}

namespace {

uint64_t Fnv1a(const std::string &s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::vector<NoisyCopy> AugmentNoise(const Wave &wave, const std::vector<Wave> &noises,
                                    const AugmentOptions &opts, const std::string &utt_id) {
  if (noises.empty()) throw Error("EmptyNoisePool", "no noise recordings given");
  if (opts.copies < 0) throw Error("BadConfig", "copies must be non-negative");
  if (opts.snr_db.empty()) throw Error("BadConfig", "SNR list is empty");
  const uint64_t key = Fnv1a(utt_id);
  std::seed_seq seq{static_cast<uint32_t>(opts.seed), static_cast<uint32_t>(opts.seed >> 32),
                    static_cast<uint32_t>(key), static_cast<uint32_t>(key >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<NoisyCopy> out;
  for (int32_t k = 0; k < opts.copies; ++k) {
    const size_t idx = std::uniform_int_distribution<size_t>(0, noises.size() - 1)(rng);
    const size_t len = std::max<size_t>(noises[idx].samples.size(), 1);
    const size_t offset = std::uniform_int_distribution<size_t>(0, len - 1)(rng);
    const double snr = opts.snr_db[k % opts.snr_db.size()];
    out.push_back(NoisyCopy{MixAtSnr(wave, noises[idx], snr, offset), snr, idx, offset});
  }
  return out;
}

std::vector<ManifestRow> AugmentedRows(const ManifestRow &original,
                                       const std::vector<std::string> &copy_paths) {
  std::vector<ManifestRow> rows{original};
  for (size_t k = 0; k < copy_paths.size(); ++k) {
    ManifestRow r = original;
    r.segment_id = original.segment_id + "-aug" + std::to_string(k + 1);
    r.path = copy_paths[k];
    r.provenance = Provenance::kAugmented;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hasr
