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

#include "fadtk/frontend.h"

#include <cmath>
#include <sstream>
#include <string>

#include "fadtk/csv.h"
#include "fadtk/error.h"
#include "fadtk/fft.h"

namespace fadtk {

StftConfig FrontendConfig::Stft() const {
  StftConfig cfg;
  cfg.window_length =
      static_cast<size_t>(std::lround(window_seconds * sample_rate));
  cfg.hop_length = static_cast<size_t>(std::lround(hop_seconds * sample_rate));
  cfg.fft_length = NextPowerOfTwo(cfg.window_length);
  return cfg;
}

void FrontendConfig::Validate() const {
  if (sample_rate <= 0 || num_bands < 1 || patch_frames < 1 ||
      !(log_offset > 0) || !(window_seconds > 0) || !(hop_seconds > 0) ||
      !(f_min >= 0) || !(f_max > f_min) || f_max > sample_rate / 2.0) {
    throw Error(ErrorCode::kArgument, "invalid frontend configuration");
  }
  Stft().Validate();
}

FrontendConfig ParseFrontendConfig(std::string_view text) {
  FrontendConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kFormat, "expected key=value: '" + line + "'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "sample_rate") {
      cfg.sample_rate = static_cast<int>(ParseInt(value));
    } else if (key == "window_seconds") {
      cfg.window_seconds = ParseDouble(value);
    } else if (key == "hop_seconds") {
      cfg.hop_seconds = ParseDouble(value);
    } else if (key == "num_bands") {
      cfg.num_bands = static_cast<int>(ParseInt(value));
    } else if (key == "f_min") {
      cfg.f_min = ParseDouble(value);
    } else if (key == "f_max") {
      cfg.f_max = ParseDouble(value);
    } else if (key == "log_offset") {
      cfg.log_offset = ParseDouble(value);
    } else if (key == "patch_frames") {
      cfg.patch_frames = static_cast<int>(ParseInt(value));
    } else {
      throw Error(ErrorCode::kFormat, "unknown frontend key '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

FrontendConfig LoadFrontendConfig(const std::filesystem::path& path) {
  return ParseFrontendConfig(ReadFile(path));
}

LogMelFrontend::LogMelFrontend(const FrontendConfig& config)
    : config_(config), stft_(config.Stft()) {
  config_.Validate();
  bank_ = MakeMelFilterbank(config_.num_bands, config_.f_min, config_.f_max,
                            stft_, config_.sample_rate);
}

Eigen::MatrixXd LogMelFrontend::Compute(const AudioClip& clip) const {
  if (clip.sample_rate != config_.sample_rate) {
    throw Error(ErrorCode::kArgument,
                "frontend expects " + std::to_string(config_.sample_rate) +
                    " Hz audio");
  }
  return Compute(clip.samples);
}

Eigen::MatrixXd LogMelFrontend::Compute(
    std::span<const double> samples) const {
  const Spectrogram spec = fadtk::Stft(samples, stft_, config_.sample_rate);
  const Eigen::MatrixXd mel = spec.Magnitude() * bank_.weights.transpose();
  return (mel.array() + config_.log_offset).log().matrix();
}

}  // namespace fadtk
