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

#ifndef FADTK_FRONTEND_H_
#define FADTK_FRONTEND_H_

#include <Eigen/Core>
#include <filesystem>
#include <span>
#include <string_view>

#include "fadtk/audio_io.h"
#include "fadtk/mel.h"
#include "fadtk/stft.h"

namespace fadtk {

// Log-mel frontend settings. The defaults follow the VGGish input
// convention: 25 ms Hann frames every 10 ms, 64 mel bands over 125-7500 Hz,
// log(mel magnitude + 0.01), patches of 96 frames.
struct FrontendConfig {
  int sample_rate = kCanonicalSampleRate;
  double window_seconds = 0.025;
  double hop_seconds = 0.010;
  int num_bands = 64;
  double f_min = 125.0;
  double f_max = 7500.0;
  double log_offset = 0.01;
  int patch_frames = 96;

  // Window and hop in samples; FFT length is the next power of two.
  StftConfig Stft() const;
  void Validate() const;
};

// Parses `key=value` lines ('#' comments allowed); unknown keys are errors.
FrontendConfig ParseFrontendConfig(std::string_view text);
FrontendConfig LoadFrontendConfig(const std::filesystem::path& path);

// Frames x bands matrix of log-mel values for a clip at config.sample_rate.
class LogMelFrontend {
 public:
  explicit LogMelFrontend(const FrontendConfig& config = {});

  Eigen::MatrixXd Compute(const AudioClip& clip) const;
  Eigen::MatrixXd Compute(std::span<const double> samples) const;

  const FrontendConfig& config() const { return config_; }

 private:
  FrontendConfig config_;
  StftConfig stft_;
  MelFilterbank bank_;
};

}  // namespace fadtk

#endif  // FADTK_FRONTEND_H_
