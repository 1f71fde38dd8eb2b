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

#include "fadtk/phase_vocoder.h"

#include <cmath>
#include <numbers>

#include "fadtk/error.h"

namespace fadtk {

AudioClip PhaseVocoderStretch(const AudioClip& clip, double factor,
                              const StftConfig& config) {
  if (!(factor > 0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::kArgument, "stretch factor must be positive");
  }
  const auto out_len = static_cast<size_t>(
      std::llround(static_cast<double>(clip.size()) * factor));
  if (clip.size() == 0) return AudioClip{{}, clip.sample_rate};

  const Spectrogram in = StftCentered(clip, config);
  const Eigen::Index frames = in.frames.rows();
  const Eigen::Index bins = in.frames.cols();
  const double rate = 1.0 / factor;

  Eigen::VectorXd advance(bins);
  for (Eigen::Index k = 0; k < bins; ++k) {
    advance(k) = 2.0 * std::numbers::pi * static_cast<double>(k) *
                 static_cast<double>(config.hop_length) /
                 static_cast<double>(config.fft_length);
  }
  auto frame_at = [&](Eigen::Index t, Eigen::Index k) {
    return t < frames ? in.frames(t, k) : std::complex<double>(0, 0);
  };

  const auto steps = static_cast<Eigen::Index>(
      std::ceil(static_cast<double>(frames) / rate));
  Spectrogram out;
  out.config = config;
  out.sample_rate = clip.sample_rate;
  out.frames.resize(steps, bins);

  Eigen::VectorXd phase(bins);
  for (Eigen::Index k = 0; k < bins; ++k) phase(k) = std::arg(in.frames(0, k));

  for (Eigen::Index s = 0; s < steps; ++s) {
    const double position = static_cast<double>(s) * rate;
    const auto lo = static_cast<Eigen::Index>(std::floor(position));
    const double alpha = position - static_cast<double>(lo);
    for (Eigen::Index k = 0; k < bins; ++k) {
      const auto a = frame_at(lo, k);
      const auto b = frame_at(lo + 1, k);
      const double mag = (1.0 - alpha) * std::abs(a) + alpha * std::abs(b);
      out.frames(s, k) = std::polar(mag, phase(k));
      double delta = std::arg(b) - std::arg(a) - advance(k);
      delta -= 2.0 * std::numbers::pi *
               std::round(delta / (2.0 * std::numbers::pi));
      phase(k) += advance(k) + delta;
    }
  }
  return IstftCentered(out, out_len);
}

}  // namespace fadtk
