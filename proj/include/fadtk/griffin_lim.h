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

#ifndef FADTK_GRIFFIN_LIM_H_
#define FADTK_GRIFFIN_LIM_H_

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "fadtk/audio_io.h"
#include "fadtk/stft.h"

namespace fadtk {

enum class PhaseInit { kRandom, kZero };

struct GriffinLimResult {
  AudioClip audio;
  // Entry k is ||(|STFT(x_k)| - M)||_F / ||M||_F after k iterations,
  // k = 0..n.
  std::vector<double> convergence;
};

// Iterative phase retrieval: starting from the initial phase, alternately
// resynthesize and replace the magnitudes of the re-analysis with the target.
// Random initial phases are drawn from a generator seeded with `seed`.
GriffinLimResult GriffinLimDetailed(const Eigen::MatrixXd& magnitude,
                                    const StftConfig& config, int iterations,
                                    PhaseInit init, uint64_t seed,
                                    int sample_rate = kCanonicalSampleRate);

AudioClip GriffinLim(const Eigen::MatrixXd& magnitude,
                     const StftConfig& config, int iterations, PhaseInit init,
                     uint64_t seed, int sample_rate = kCanonicalSampleRate);

double SpectralConvergence(const AudioClip& estimate,
                           const Eigen::MatrixXd& target,
                           const StftConfig& config);

}  // namespace fadtk

#endif  // FADTK_GRIFFIN_LIM_H_
