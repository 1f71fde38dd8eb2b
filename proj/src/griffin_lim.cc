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

#include "fadtk/griffin_lim.h"

#include <cmath>
#include <numbers>

#include "fadtk/error.h"
#include "fadtk/random.h"

namespace fadtk {
namespace {

Spectrogram WithPhase(const Eigen::MatrixXd& magnitude,
                      const Eigen::MatrixXd& phase, const StftConfig& config,
                      int sample_rate) {
  Spectrogram spec;
  spec.config = config;
  spec.sample_rate = sample_rate;
  spec.frames.resize(magnitude.rows(), magnitude.cols());
  for (Eigen::Index t = 0; t < magnitude.rows(); ++t) {
    for (Eigen::Index k = 0; k < magnitude.cols(); ++k) {
      spec.frames(t, k) = std::polar(magnitude(t, k), phase(t, k));
    }
  }
  return spec;
}

Eigen::MatrixXd PhaseOf(const Spectrogram& spec) {
  Eigen::MatrixXd phase(spec.frames.rows(), spec.frames.cols());
  for (Eigen::Index t = 0; t < phase.rows(); ++t) {
    for (Eigen::Index k = 0; k < phase.cols(); ++k) {
      const auto z = spec.frames(t, k);
      phase(t, k) = (z == std::complex<double>(0, 0)) ? 0.0 : std::arg(z);
    }
  }
  return phase;
}

}  // namespace

double SpectralConvergence(const AudioClip& estimate,
                           const Eigen::MatrixXd& target,
                           const StftConfig& config) {
  const Eigen::MatrixXd mag = Stft(estimate, config).Magnitude();
  if (mag.rows() != target.rows() || mag.cols() != target.cols()) {
    throw Error(ErrorCode::kArgument, "spectrogram shapes differ");
  }
  const double denom = target.norm();
  if (denom == 0) return (mag - target).norm() == 0 ? 0.0 : INFINITY;
  return (mag - target).norm() / denom;
}

GriffinLimResult GriffinLimDetailed(const Eigen::MatrixXd& magnitude,
                                    const StftConfig& config, int iterations,
                                    PhaseInit init, uint64_t seed,
                                    int sample_rate) {
  config.Validate();
  if (iterations < 0) {
    throw Error(ErrorCode::kArgument, "iterations must be >= 0");
  }
  if ((magnitude.array() < 0).any() || !magnitude.allFinite()) {
    throw Error(ErrorCode::kArgument,
                "magnitudes must be finite and nonnegative");
  }
  if (magnitude.cols() != static_cast<Eigen::Index>(config.bins())) {
    throw Error(ErrorCode::kArgument, "magnitude width does not match config");
  }

  Eigen::MatrixXd phase = Eigen::MatrixXd::Zero(magnitude.rows(),
                                                magnitude.cols());
  if (init == PhaseInit::kRandom) {
    Rng rng(seed);
    for (Eigen::Index t = 0; t < phase.rows(); ++t) {
      for (Eigen::Index k = 0; k < phase.cols(); ++k) {
        phase(t, k) = 2.0 * std::numbers::pi * rng.Uniform() - std::numbers::pi;
      }
    }
  }

  GriffinLimResult result;
  result.audio = Istft(WithPhase(magnitude, phase, config, sample_rate));
  const double target_norm = magnitude.norm();
  for (int it = 0; it < iterations; ++it) {
    const Spectrogram analysis = Stft(result.audio, config);
    if (target_norm > 0) {
      result.convergence.push_back(
          (analysis.Magnitude() - magnitude).norm() / target_norm);
    } else {
      result.convergence.push_back(0.0);
    }
    result.audio =
        Istft(WithPhase(magnitude, PhaseOf(analysis), config, sample_rate));
  }
  result.convergence.push_back(
      target_norm > 0 ? SpectralConvergence(result.audio, magnitude, config)
                      : 0.0);
  return result;
}

AudioClip GriffinLim(const Eigen::MatrixXd& magnitude,
                     const StftConfig& config, int iterations, PhaseInit init,
                     uint64_t seed, int sample_rate) {
  return GriffinLimDetailed(magnitude, config, iterations, init, seed,
                            sample_rate)
      .audio;
}

}  // namespace fadtk
