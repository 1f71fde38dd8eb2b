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

#ifndef FADTK_STFT_H_
#define FADTK_STFT_H_

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

#include "fadtk/audio_io.h"

namespace fadtk {

// Periodic-Hann short-time Fourier transform configuration.
struct StftConfig {
  size_t window_length = 1024;
  size_t hop_length = 256;
  size_t fft_length = 1024;

  size_t bins() const { return fft_length / 2 + 1; }

  // hop <= window <= fft, all positive, fft even.
  void Validate() const;

  // Hann windows overlap-add to a constant when the hop divides the window
  // at least twice.
  bool IsCola() const {
    return hop_length > 0 && window_length % hop_length == 0 &&
           window_length / hop_length >= 2;
  }

  // Number of frames for a signal of `length` samples (0 if too short).
  size_t NumFrames(size_t length) const;
};

// Canonical configuration used by the distortions and magnitude L2.
inline constexpr StftConfig kDistortionStft{1024, 256, 1024};

std::vector<double> HannWindow(size_t length);

using ComplexMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;

// T x F one-sided spectrum; frame t covers [t * hop, t * hop + window).
struct Spectrogram {
  ComplexMatrix frames;
  StftConfig config;
  int sample_rate = kCanonicalSampleRate;

  Eigen::Index num_frames() const { return frames.rows(); }
  Eigen::MatrixXd Magnitude() const { return frames.cwiseAbs(); }
};

Spectrogram Stft(std::span<const double> samples, const StftConfig& config,
                 int sample_rate = kCanonicalSampleRate);
inline Spectrogram Stft(const AudioClip& clip, const StftConfig& config) {
  return Stft(clip.samples, config, clip.sample_rate);
}

// Windowed overlap-add normalized by the summed squared window. Output has
// (T - 1) * hop + window samples. Requires a COLA configuration.
AudioClip Istft(const Spectrogram& spec);

// Variants that pad window/2 zeros at the front and enough at the tail for
// every input sample to sit in the well-conditioned interior. Used wherever
// a modified spectrogram is resynthesized.
Spectrogram StftCentered(const AudioClip& clip, const StftConfig& config);
AudioClip IstftCentered(const Spectrogram& spec, size_t output_length);

}  // namespace fadtk

#endif  // FADTK_STFT_H_
