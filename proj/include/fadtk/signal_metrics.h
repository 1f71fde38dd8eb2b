// Copyright 2026 The FADTK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FADTK_SIGNAL_METRICS_H_
#define FADTK_SIGNAL_METRICS_H_

#include <string>

#include "fadtk/audio_io.h"
#include "fadtk/stft.h"

namespace fadtk {

inline constexpr int kDefaultFilterTaps = 512;

// Value written to CSV in place of +infinity for a perfect reconstruction.
inline constexpr double kInfiniteSdrSentinelDb = 300.0;

// Truncates or zero-pads `estimate` at the tail to `length` samples.
std::vector<double> AlignLength(const std::vector<double>& estimate,
                                size_t length);

// Signal-to-distortion ratio in dB. The target is the least-squares
// projection of the estimate onto the reference delayed by
// 0..filter_taps-1 samples, so any time-invariant FIR distortion shorter
// than filter_taps is forgiven. Returns +infinity when the residual energy
// is below 1e-20 of the target energy.
double Sdr(const AudioClip& reference, const AudioClip& estimate,
           int filter_taps = kDefaultFilterTaps);

// Scale-invariant SDR: projection onto the reference alone.
double SiSdr(const AudioClip& reference, const AudioClip& estimate);

// 1 - cosine similarity, in [0, 2].
double CosineDistance(const AudioClip& reference, const AudioClip& estimate);

// || |STFT(estimate)| - |STFT(reference)| ||_F / || |STFT(reference)| ||_F.
double MagnitudeL2(const AudioClip& reference, const AudioClip& estimate,
                   const StftConfig& config = kDistortionStft);

struct MetricReport {
  std::string clip_id;
  double sdr_db = 0;
  double si_sdr_db = 0;
  double cosine_distance = 0;
  double magnitude_l2 = 0;
};

MetricReport ComputeMetrics(const std::string& clip_id,
                            const AudioClip& reference,
                            const AudioClip& estimate,
                            int filter_taps = kDefaultFilterTaps);

// Replaces +infinity with the sentinel for tabular output.
double SdrForReport(double sdr_db);

}  // namespace fadtk

#endif  // FADTK_SIGNAL_METRICS_H_
