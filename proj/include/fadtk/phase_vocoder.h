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

#ifndef FADTK_PHASE_VOCODER_H_
#define FADTK_PHASE_VOCODER_H_

#include "fadtk/audio_io.h"
#include "fadtk/stft.h"

namespace fadtk {

// Pitch-preserving time stretch. `factor` multiplies the duration: the
// output has round(input.size() * factor) samples. Frames are read at a
// fractional rate of 1 / factor with linearly interpolated magnitudes and
// per-bin phase propagated from the measured instantaneous frequency.
AudioClip PhaseVocoderStretch(const AudioClip& clip, double factor,
                              const StftConfig& config = kDistortionStft);

}  // namespace fadtk

#endif  // FADTK_PHASE_VOCODER_H_
