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

#include "fadtk/mel.h"

#include <cmath>

#include "fadtk/error.h"

namespace fadtk {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank MakeMelFilterbank(int n_mels, double f_min, double f_max,
                                const StftConfig& config, int sample_rate) {
  config.Validate();
  if (n_mels < 1) throw Error(ErrorCode::kArgument, "n_mels must be >= 1");
  if (sample_rate <= 0 || !(f_min >= 0) || !(f_min < f_max) ||
      f_max > sample_rate / 2.0) {
    throw Error(ErrorCode::kArgument,
                "mel range must satisfy 0 <= f_min < f_max <= sample_rate/2");
  }
  const auto bins = static_cast<Eigen::Index>(config.bins());
  const double bin_hz = static_cast<double>(sample_rate) /
                        static_cast<double>(config.fft_length);
  const double mel_lo = HzToMel(f_min);
  const double mel_step = (HzToMel(f_max) - mel_lo) / (n_mels + 1);

  MelFilterbank bank;
  bank.n_mels = n_mels;
  bank.f_min = f_min;
  bank.f_max = f_max;
  bank.weights = Eigen::MatrixXd::Zero(n_mels, bins);
  for (int m = 0; m < n_mels; ++m) {
    const double lower = MelToHz(mel_lo + m * mel_step);
    const double center = MelToHz(mel_lo + (m + 1) * mel_step);
    const double upper = MelToHz(mel_lo + (m + 2) * mel_step);
    bank.center_hz.push_back(center);
    double mass = 0;
    for (Eigen::Index k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      double w = 0;
      if (f > lower && f <= center) {
        w = (f - lower) / (center - lower);
      } else if (f > center && f < upper) {
        w = (upper - f) / (upper - center);
      }
      bank.weights(m, k) = w;
      mass += w;
    }
    if (mass <= 0) {
      const auto nearest = std::min<Eigen::Index>(
          bins - 1, static_cast<Eigen::Index>(std::lround(center / bin_hz)));
      bank.weights(m, nearest) = 1.0;
    }
  }
  return bank;
}

}  // namespace fadtk
