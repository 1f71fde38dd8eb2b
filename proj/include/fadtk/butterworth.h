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

#ifndef FADTK_BUTTERWORTH_H_
#define FADTK_BUTTERWORTH_H_

#include <complex>
#include <span>
#include <vector>

#include "fadtk/audio_io.h"

namespace fadtk {

enum class FilterKind { kLowpass, kHighpass };

inline constexpr int kDefaultButterworthOrder = 5;

// y = b0 x + b1 x[-1] + b2 x[-2] - a1 y[-1] - a2 y[-2]
struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;
};

// Digital Butterworth filter from the analog prototype via the bilinear
// transform with a prewarped cutoff, so the -3 dB point lands exactly on
// the requested frequency.
class ButterworthFilter {
 public:
  ButterworthFilter(FilterKind kind, double cutoff_hz, int order,
                    int sample_rate);

  // Causal, forward-only filtering from a zero initial state.
  std::vector<double> Apply(std::span<const double> input) const;
  std::complex<double> Response(double frequency_hz) const;

  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
  int sample_rate_;
};

AudioClip ButterworthFilterClip(const AudioClip& clip, FilterKind kind,
                                double cutoff_hz,
                                int order = kDefaultButterworthOrder);

}  // namespace fadtk

#endif  // FADTK_BUTTERWORTH_H_
