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

#ifndef FADTK_MEL_H_
#define FADTK_MEL_H_

#include <Eigen/Core>
#include <vector>

#include "fadtk/stft.h"

namespace fadtk {

// HTK mel scale: m = 2595 log10(1 + f / 700).
double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filters with centers uniformly spaced on the mel axis.
struct MelFilterbank {
  Eigen::MatrixXd weights;  // n_mels x (fft_length / 2 + 1)
  std::vector<double> center_hz;
  double f_min = 0;
  double f_max = 0;
  int n_mels = 0;
};

// Filters too narrow to contain any FFT bin collapse onto the bin nearest
// their center so that every row has positive mass.
MelFilterbank MakeMelFilterbank(int n_mels, double f_min, double f_max,
                                const StftConfig& config, int sample_rate);

}  // namespace fadtk

#endif  // FADTK_MEL_H_
