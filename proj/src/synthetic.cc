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

#include "fadtk/synthetic.h"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "fadtk/butterworth.h"
#include "fadtk/random.h"

namespace fadtk {

AudioClip SynthesizeMusicClip(uint64_t seed, double seconds, int sample_rate) {
  Rng rng(DeriveSeed(seed, 0x5EED));
  const auto length = static_cast<size_t>(std::llround(seconds * sample_rate));
  std::vector<double> out(length, 0.0);

  static constexpr int kMajor[] = {0, 2, 4, 5, 7, 9, 11};
  static constexpr int kMinor[] = {0, 2, 3, 5, 7, 8, 10};
  const int* scale = rng.Uniform() < 0.5 ? kMajor : kMinor;
  const int root = 40 + static_cast<int>(rng.Below(20));  // MIDI note
  const double beat = 0.2 + 0.4 * rng.Uniform();
  const double rolloff = 0.8 + 1.2 * rng.Uniform();
  const int harmonics = 4 + static_cast<int>(rng.Below(5));
  const double nyquist = sample_rate / 2.0;

  // Notes: 1-3 voices per beat.
  for (double onset = 0; onset < seconds; onset += beat) {
    const int voices = 1 + static_cast<int>(rng.Below(3));
    for (int v = 0; v < voices; ++v) {
      const int degree = static_cast<int>(rng.Below(14));
      const int midi = root + 12 * (degree / 7) + scale[degree % 7];
      const double f0 = 440.0 * std::pow(2.0, (midi - 69) / 12.0);
      const double amp = 0.3 + 0.7 * rng.Uniform();
      const double duration = beat * (1.0 + 2.0 * rng.Uniform());
      const double decay = 2.0 + 6.0 * rng.Uniform();
      const double phase0 = 2.0 * std::numbers::pi * rng.Uniform();
      const auto start = static_cast<size_t>(onset * sample_rate);
      const auto stop = std::min(
          length, start + static_cast<size_t>(duration * sample_rate));
      for (size_t i = start; i < stop; ++i) {
        const double t = static_cast<double>(i - start) / sample_rate;
        const double env = std::min(1.0, t / 0.01) * std::exp(-decay * t);
        double s = 0;
        for (int h = 1; h <= harmonics; ++h) {
          if (h * f0 >= nyquist) break;
          s += std::sin(2.0 * std::numbers::pi * h * f0 * t + h * phase0) /
               std::pow(h, rolloff);
        }
        out[i] += amp * env * s;
      }
    }
  }

  // Band-limited noise bed with bursts on the beat.
  std::vector<double> noise(length);
  for (double& n : noise) n = rng.Normal();
  const double upper = 2000.0 + 4000.0 * rng.Uniform();
  noise = ButterworthFilter(FilterKind::kLowpass, upper, 4, sample_rate)
              .Apply(noise);
  noise = ButterworthFilter(FilterKind::kHighpass, 100.0, 2, sample_rate)
              .Apply(noise);
  const double level = 0.03 + 0.07 * rng.Uniform();
  for (size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double in_beat = std::fmod(t, beat);
    const double burst = 0.3 + 2.0 * std::exp(-in_beat * 30.0);
    out[i] += level * burst * noise[i];
  }
  return NormalizePeak(AudioClip{std::move(out), sample_rate});
}

CorpusManifest WriteSyntheticCorpus(const std::filesystem::path& directory,
                                    const SyntheticCorpusOptions& options) {
  std::filesystem::create_directories(directory);
  const auto root = std::filesystem::absolute(directory);
  CorpusManifest manifest;
  manifest.clip_seconds = options.seconds;
  for (int i = 0; i < options.clips; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "clip_%03d", i);
    const auto path = root / (std::string(name) + ".wav");
    SaveWav(SynthesizeMusicClip(DeriveSeed(options.seed, static_cast<uint64_t>(i)),
                                options.seconds),
            path);
    manifest.entries.push_back({name, path, ClipRole::kEvaluation});
  }
  if (options.background_copies) {
    for (int i = 0; i < options.clips; ++i) {
      auto entry = manifest.entries[static_cast<size_t>(i)];
      entry.clip_id = "bg_" + entry.clip_id;
      entry.role = ClipRole::kBackground;
      manifest.entries.push_back(entry);
    }
  }
  SaveManifest(manifest, root / "manifest.csv");
  return manifest;
}

}  // namespace fadtk
