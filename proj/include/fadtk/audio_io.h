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

#ifndef FADTK_AUDIO_IO_H_
#define FADTK_AUDIO_IO_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace fadtk {

// Every metric in the toolkit runs at this rate; ingestion resamples to it.
inline constexpr int kCanonicalSampleRate = 16000;

// Mono PCM audio. Samples are nominally in [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kCanonicalSampleRate;

  size_t size() const { return samples.size(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Reads an uncompressed RIFF/WAVE file (PCM 8/16/24/32-bit or IEEE float
// 32-bit). Multichannel audio is averaged to mono.
AudioClip LoadWav(const std::filesystem::path& path);

// Writes 16-bit little-endian PCM. Samples outside [-1, 1] are clipped.
void SaveWav(const AudioClip& clip, const std::filesystem::path& path);

// Encodes a clip as the bytes of a 16-bit PCM WAV file.
std::vector<unsigned char> EncodeWav16(const AudioClip& clip);
AudioClip DecodeWav(const std::vector<unsigned char>& bytes);

// Band-limited (Kaiser-windowed sinc) resampling by an arbitrary ratio.
// The output has round(input.size() * ratio) samples.
std::vector<double> ResampleByRatio(const std::vector<double>& input,
                                    double ratio);

AudioClip Resample(const AudioClip& clip, int target_rate);

// Scales so that max |sample| == 1. All-zero clips are returned unchanged.
AudioClip NormalizePeak(const AudioClip& clip);

// Splits into consecutive non-overlapping segments; the trailing remainder
// is dropped.
std::vector<AudioClip> Segment(const AudioClip& clip, double segment_seconds);

// Loads a WAV and brings it to the canonical form used by every metric:
// mono, 16 kHz, peak-normalized.
AudioClip LoadCanonical(const std::filesystem::path& path);

enum class ClipRole { kBackground, kEvaluation };

struct ManifestEntry {
  std::string clip_id;
  std::filesystem::path path;
  ClipRole role = ClipRole::kEvaluation;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  double clip_seconds = 5.0;

  std::vector<ManifestEntry> WithRole(ClipRole role) const;
};

// CSV with header `clip_id,path,role`. Relative paths are resolved against
// the manifest's directory.
CorpusManifest LoadManifest(const std::filesystem::path& path);
void SaveManifest(const CorpusManifest& manifest,
                  const std::filesystem::path& path);

// Throws on duplicate clip ids.
void ValidateManifest(const CorpusManifest& manifest);

}  // namespace fadtk

#endif  // FADTK_AUDIO_IO_H_
