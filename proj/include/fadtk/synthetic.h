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

#ifndef FADTK_SYNTHETIC_H_
#define FADTK_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fadtk/audio_io.h"

namespace fadtk {

// Seeded music-like test material: harmonic notes drawn from a scale with
// attack/decay envelopes over a bed of band-limited noise with rhythmic
// bursts. Peak-normalized, canonical rate.
AudioClip SynthesizeMusicClip(uint64_t seed, double seconds,
                              int sample_rate = kCanonicalSampleRate);

struct SyntheticCorpusOptions {
  int clips = 30;
  double seconds = 6.0;
  uint64_t seed = 1;
  // Also list every clip a second time with role=background.
  bool background_copies = false;
};

// Writes clip_NNN.wav files and manifest.csv into `directory`, returning
// the manifest (paths absolute).
CorpusManifest WriteSyntheticCorpus(const std::filesystem::path& directory,
                                    const SyntheticCorpusOptions& options);

}  // namespace fadtk

#endif  // FADTK_SYNTHETIC_H_
