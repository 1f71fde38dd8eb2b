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

#include "fadtk/butterworth.h"

#include <cmath>
#include <numbers>

#include "fadtk/error.h"

namespace fadtk {
namespace {

std::complex<double> SectionResponse(const Biquad& s, std::complex<double> z) {
  const auto zi = 1.0 / z;
  return (s.b0 + s.b1 * zi + s.b2 * zi * zi) /
         (1.0 + s.a1 * zi + s.a2 * zi * zi);
}

}  // namespace

ButterworthFilter::ButterworthFilter(FilterKind kind, double cutoff_hz,
                                     int order, int sample_rate)
    : sample_rate_(sample_rate) {
  if (order < 1) throw Error(ErrorCode::kArgument, "order must be >= 1");
  if (sample_rate <= 0 || !(cutoff_hz > 0) || !(cutoff_hz < sample_rate / 2.0)) {
    throw Error(ErrorCode::kArgument,
                "cutoff must lie strictly between 0 and the Nyquist frequency");
  }
  const double fs2 = 2.0 * sample_rate;
  const double warped = fs2 * std::tan(std::numbers::pi * cutoff_hz / sample_rate);
  const double zero = kind == FilterKind::kLowpass ? -1.0 : 1.0;

  // Upper-half-plane prototype poles; conjugates are implied.
  for (int k = 0; k < order / 2; ++k) {
    const double theta =
        std::numbers::pi * (2.0 * k + 1.0 + order) / (2.0 * order);
    const std::complex<double> proto = std::polar(1.0, theta);
    const std::complex<double> s =
        kind == FilterKind::kLowpass ? warped * proto : warped / proto;
    const std::complex<double> z = (fs2 + s) / (fs2 - s);
    Biquad q;
    q.b0 = 1.0;
    q.b1 = -2.0 * zero;
    q.b2 = 1.0;
    q.a1 = -2.0 * z.real();
    q.a2 = std::norm(z);
    sections_.push_back(q);
  }
  if (order % 2 == 1) {
    const double s = -warped;  // real prototype pole at -1
    const double p = kind == FilterKind::kLowpass ? s : warped * warped / s;
    const double z = (fs2 + p) / (fs2 - p);
    Biquad q;
    q.b0 = 1.0;
    q.b1 = -zero;
    q.a1 = -z;
    sections_.push_back(q);
  }
  // Unit gain at DC (lowpass) or Nyquist (highpass).
  const std::complex<double> ref = kind == FilterKind::kLowpass ? 1.0 : -1.0;
  std::complex<double> total = 1.0;
  for (const auto& s : sections_) total *= SectionResponse(s, ref);
  const double scale = 1.0 / std::abs(total);
  sections_.front().b0 *= scale;
  sections_.front().b1 *= scale;
  sections_.front().b2 *= scale;
}

std::vector<double> ButterworthFilter::Apply(
    std::span<const double> input) const {
  std::vector<double> signal(input.begin(), input.end());
  for (const auto& s : sections_) {
    double w1 = 0, w2 = 0;
    for (double& v : signal) {
      const double x = v;
      const double y = s.b0 * x + w1;
      w1 = s.b1 * x - s.a1 * y + w2;
      w2 = s.b2 * x - s.a2 * y;
      v = y;
    }
  }
  return signal;
}

std::complex<double> ButterworthFilter::Response(double frequency_hz) const {
  const auto z = std::polar(1.0, 2.0 * std::numbers::pi * frequency_hz /
                                     sample_rate_);
  std::complex<double> total = 1.0;
  for (const auto& s : sections_) total *= SectionResponse(s, z);
  return total;
}

AudioClip ButterworthFilterClip(const AudioClip& clip, FilterKind kind,
                                double cutoff_hz, int order) {
  const ButterworthFilter filter(kind, cutoff_hz, order, clip.sample_rate);
  return AudioClip{filter.Apply(clip.samples), clip.sample_rate};
}

}  // namespace fadtk
