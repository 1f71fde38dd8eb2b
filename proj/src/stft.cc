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

#include "fadtk/stft.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fadtk/error.h"
#include "fadtk/fft.h"

namespace fadtk {

void StftConfig::Validate() const {
  if (hop_length == 0 || window_length == 0 || fft_length == 0) {
    throw Error(ErrorCode::kArgument, "STFT lengths must be positive");
  }
  if (hop_length > window_length || window_length > fft_length) {
    throw Error(ErrorCode::kArgument,
                "STFT requires hop <= window <= fft length");
  }
  if (fft_length % 2 != 0) {
    throw Error(ErrorCode::kArgument, "FFT length must be even");
  }
}

size_t StftConfig::NumFrames(size_t length) const {
  if (length < window_length) return 0;
  return (length - window_length) / hop_length + 1;
}

std::vector<double> HannWindow(size_t length) {
  std::vector<double> w(length);
  for (size_t i = 0; i < length; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                static_cast<double>(i) /
                                static_cast<double>(length));
  }
  return w;
}

Spectrogram Stft(std::span<const double> samples, const StftConfig& config,
                 int sample_rate) {
  config.Validate();
  const size_t frames = config.NumFrames(samples.size());
  if (frames == 0) {
    throw Error(ErrorCode::kInsufficientInput,
                "signal of " + std::to_string(samples.size()) +
                    " samples is shorter than one window");
  }
  const auto window = HannWindow(config.window_length);
  RealFft fft(config.fft_length);
  std::vector<double> buffer(config.fft_length, 0.0);
  std::vector<Complex> bins(config.bins());

  Spectrogram spec;
  spec.config = config;
  spec.sample_rate = sample_rate;
  spec.frames.resize(static_cast<Eigen::Index>(frames),
                     static_cast<Eigen::Index>(config.bins()));
  for (size_t t = 0; t < frames; ++t) {
    const size_t start = t * config.hop_length;
    for (size_t i = 0; i < config.window_length; ++i) {
      buffer[i] = samples[start + i] * window[i];
    }
    fft.Forward(buffer, bins);
    for (size_t k = 0; k < bins.size(); ++k) {
      spec.frames(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(k)) =
          bins[k];
    }
  }
  return spec;
}

AudioClip Istft(const Spectrogram& spec) {
  const StftConfig& config = spec.config;
  config.Validate();
  if (!config.IsCola()) {
    throw Error(ErrorCode::kArgument,
                "inverse STFT requires the hop to divide the window");
  }
  if (spec.frames.cols() != static_cast<Eigen::Index>(config.bins())) {
    throw Error(ErrorCode::kArgument, "spectrogram width does not match config");
  }
  AudioClip out;
  out.sample_rate = spec.sample_rate;
  const auto frames = static_cast<size_t>(spec.frames.rows());
  if (frames == 0) return out;
  const size_t length = (frames - 1) * config.hop_length + config.window_length;
  out.samples.assign(length, 0.0);
  std::vector<double> norm(length, 0.0);

  const auto window = HannWindow(config.window_length);
  RealFft fft(config.fft_length);
  std::vector<double> buffer(config.fft_length);
  std::vector<Complex> bins(config.bins());
  for (size_t t = 0; t < frames; ++t) {
    for (size_t k = 0; k < bins.size(); ++k) {
      bins[k] = spec.frames(static_cast<Eigen::Index>(t),
                            static_cast<Eigen::Index>(k));
    }
    fft.Inverse(bins, buffer);
    const size_t start = t * config.hop_length;
    for (size_t i = 0; i < config.window_length; ++i) {
      out.samples[start + i] += buffer[i] * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }
  constexpr double kMinNorm = 1e-10;
  for (size_t i = 0; i < length; ++i) {
    out.samples[i] = norm[i] > kMinNorm ? out.samples[i] / norm[i] : 0.0;
  }
  return out;
}

Spectrogram StftCentered(const AudioClip& clip, const StftConfig& config) {
  config.Validate();
  const size_t pad = config.window_length / 2;
  size_t padded = clip.size() + 2 * pad;
  padded = std::max(padded, config.window_length);
  const size_t rem = (padded - config.window_length) % config.hop_length;
  if (rem != 0) padded += config.hop_length - rem;
  std::vector<double> buffer(padded, 0.0);
  std::copy(clip.samples.begin(), clip.samples.end(),
            buffer.begin() + static_cast<long>(pad));
  return Stft(buffer, config, clip.sample_rate);
}

AudioClip IstftCentered(const Spectrogram& spec, size_t output_length) {
  AudioClip full = Istft(spec);
  const size_t pad = spec.config.window_length / 2;
  AudioClip out;
  out.sample_rate = full.sample_rate;
  out.samples.assign(output_length, 0.0);
  for (size_t i = 0; i < output_length && pad + i < full.size(); ++i) {
    out.samples[i] = full.samples[pad + i];
  }
  return out;
}

}  // namespace fadtk
