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

#include "fadtk/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <set>

#include "fadtk/csv.h"
#include "fadtk/error.h"

namespace fadtk {
namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t ReadU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t ReadU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char>& out, uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back(v >> 8);
}

void PutU32(std::vector<unsigned char>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

double DecodeSample(const unsigned char* p, uint16_t format, int bits) {
  if (format == kFormatFloat) {
    float f;
    uint32_t raw = ReadU32(p);
    std::memcpy(&f, &raw, sizeof(f));
    if (!std::isfinite(f)) {
      throw Error(ErrorCode::kFormat, "non-finite float sample");
    }
    return std::clamp(static_cast<double>(f), -1.0, 1.0);
  }
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<int16_t>(ReadU16(p)) / 32768.0;
    case 24: {
      int32_t v = static_cast<int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case 32:
      return static_cast<int32_t>(ReadU32(p)) / 2147483648.0;
  }
  throw Error(ErrorCode::kFormat, "unsupported bit depth");
}

double KaiserWindow(double x, double beta) {
  // x in [-1, 1]
  const double arg = 1.0 - x * x;
  if (arg <= 0) return 0.0;
  return std::cyl_bessel_i(0.0, beta * std::sqrt(arg)) /
         std::cyl_bessel_i(0.0, beta);
}

constexpr double kZeroCrossings = 32;
constexpr int kTableOversampling = 512;

// Kaiser-windowed sinc sampled on |x| in zero-crossing units.
const std::vector<double>& KernelTable() {
  static const std::vector<double> table = [] {
    constexpr double kBeta = 8.6;
    const size_t size =
        static_cast<size_t>(kZeroCrossings * kTableOversampling) + 2;
    std::vector<double> t(size, 0.0);
    for (size_t i = 0; i < size; ++i) {
      const double x = static_cast<double>(i) / kTableOversampling;
      const double sinc =
          x == 0 ? 1.0
                 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
      t[i] = sinc * KaiserWindow(x / kZeroCrossings, kBeta);
    }
    return t;
  }();
  return table;
}

}  // namespace

AudioClip DecodeWav(const std::vector<unsigned char>& bytes) {
  const size_t n = bytes.size();
  if (n < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kFormat, "not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t rate = 0;
  uint16_t bits = 0;
  size_t pos = 12;
  while (pos + 8 <= n) {
    const unsigned char* chunk = bytes.data() + pos;
    const uint32_t size = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > n) {
        throw Error(ErrorCode::kFormat, "truncated fmt chunk");
      }
      const unsigned char* f = bytes.data() + body;
      format = ReadU16(f);
      channels = ReadU16(f + 2);
      rate = ReadU32(f + 4);
      bits = ReadU16(f + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw Error(ErrorCode::kFormat, "truncated fmt chunk");
        format = ReadU16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw Error(ErrorCode::kFormat, "data before fmt chunk");
      if (format != kFormatPcm && format != kFormatFloat) {
        throw Error(ErrorCode::kUnsupportedCodec,
                    "WAVE format tag " + std::to_string(format));
      }
      if (channels == 0 || rate == 0) {
        throw Error(ErrorCode::kFormat, "zero channels or sample rate");
      }
      if ((format == kFormatFloat && bits != 32) ||
          (format == kFormatPcm && bits != 8 && bits != 16 && bits != 24 &&
           bits != 32)) {
        throw Error(ErrorCode::kFormat,
                    "unsupported bit depth " + std::to_string(bits));
      }
      if (body + size > n) throw Error(ErrorCode::kFormat, "truncated data");
      const size_t bytes_per_sample = bits / 8;
      const size_t frame_bytes = bytes_per_sample * channels;
      const size_t frames = size / frame_bytes;
      AudioClip clip;
      clip.sample_rate = static_cast<int>(rate);
      clip.samples.resize(frames);
      const unsigned char* data = bytes.data() + body;
      for (size_t i = 0; i < frames; ++i) {
        double sum = 0;
        for (size_t c = 0; c < channels; ++c) {
          sum += DecodeSample(data + i * frame_bytes + c * bytes_per_sample,
                              format, bits);
        }
        clip.samples[i] = sum / channels;
      }
      return clip;
    }
    pos = body + size + (size & 1);
  }
  throw Error(ErrorCode::kFormat, have_fmt ? "missing data chunk"
                                           : "missing fmt chunk");
}

AudioClip LoadWav(const std::filesystem::path& path) {
  const std::string content = ReadFile(path);
  return DecodeWav(std::vector<unsigned char>(content.begin(), content.end()));
}

std::vector<unsigned char> EncodeWav16(const AudioClip& clip) {
  if (clip.sample_rate <= 0) {
    throw Error(ErrorCode::kArgument, "sample rate must be positive");
  }
  const uint32_t data_size = static_cast<uint32_t>(clip.samples.size() * 2);
  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  PutU32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(out, 16);
  PutU16(out, kFormatPcm);
  PutU16(out, 1);
  PutU32(out, static_cast<uint32_t>(clip.sample_rate));
  PutU32(out, static_cast<uint32_t>(clip.sample_rate) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  PutU32(out, data_size);
  for (double s : clip.samples) {
    const double scaled = std::round(s * 32768.0);
    const auto v = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    PutU16(out, static_cast<uint16_t>(v));
  }
  return out;
}

void SaveWav(const AudioClip& clip, const std::filesystem::path& path) {
  const auto bytes = EncodeWav16(clip);
  WriteFile(path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                   bytes.size()));
}

std::vector<double> ResampleByRatio(const std::vector<double>& input,
                                    double ratio) {
  if (!(ratio > 0) || !std::isfinite(ratio)) {
    throw Error(ErrorCode::kArgument, "resampling ratio must be positive");
  }
  const auto out_len = static_cast<size_t>(
      std::llround(static_cast<double>(input.size()) * ratio));
  if (ratio == 1.0) return input;

  // Cutoff relative to the input Nyquist, slightly below the lower Nyquist.
  const double cutoff = std::min(1.0, ratio) * 0.97;
  const double half_width = kZeroCrossings / cutoff;
  const auto n = static_cast<long long>(input.size());
  const std::vector<double>& table = KernelTable();

  std::vector<double> out(out_len, 0.0);
  for (size_t j = 0; j < out_len; ++j) {
    const double t = static_cast<double>(j) / ratio;
    const auto first = std::max<long long>(
        0, static_cast<long long>(std::ceil(t - half_width)));
    const auto last = std::min<long long>(
        n - 1, static_cast<long long>(std::floor(t + half_width)));
    double acc = 0;
    for (long long k = first; k <= last; ++k) {
      const double pos =
          std::abs(t - static_cast<double>(k)) * cutoff * kTableOversampling;
      const auto idx = static_cast<size_t>(pos);
      if (idx + 1 >= table.size()) continue;
      const double frac = pos - static_cast<double>(idx);
      acc += input[static_cast<size_t>(k)] *
             (table[idx] + frac * (table[idx + 1] - table[idx]));
    }
    out[j] = acc * cutoff;
  }
  return out;
}

AudioClip Resample(const AudioClip& clip, int target_rate) {
  if (target_rate <= 0) {
    throw Error(ErrorCode::kArgument, "target rate must be positive");
  }
  if (target_rate == clip.sample_rate) return clip;
  AudioClip out;
  out.sample_rate = target_rate;
  out.samples = ResampleByRatio(
      clip.samples, static_cast<double>(target_rate) / clip.sample_rate);
  return out;
}

AudioClip NormalizePeak(const AudioClip& clip) {
  double peak = 0;
  for (double s : clip.samples) peak = std::max(peak, std::abs(s));
  if (peak == 0) return clip;
  AudioClip out = clip;
  for (double& s : out.samples) s /= peak;
  return out;
}

std::vector<AudioClip> Segment(const AudioClip& clip, double segment_seconds) {
  if (!(segment_seconds > 0)) {
    throw Error(ErrorCode::kArgument, "segment length must be positive");
  }
  const auto length = static_cast<size_t>(
      std::llround(segment_seconds * clip.sample_rate));
  std::vector<AudioClip> segments;
  if (length == 0) return segments;
  for (size_t start = 0; start + length <= clip.samples.size();
       start += length) {
    AudioClip piece;
    piece.sample_rate = clip.sample_rate;
    piece.samples.assign(clip.samples.begin() + static_cast<long>(start),
                         clip.samples.begin() + static_cast<long>(start + length));
    segments.push_back(std::move(piece));
  }
  return segments;
}

AudioClip LoadCanonical(const std::filesystem::path& path) {
  return NormalizePeak(Resample(LoadWav(path), kCanonicalSampleRate));
}

std::vector<ManifestEntry> CorpusManifest::WithRole(ClipRole role) const {
  std::vector<ManifestEntry> out;
  for (const auto& e : entries) {
    if (e.role == role) out.push_back(e);
  }
  return out;
}

void ValidateManifest(const CorpusManifest& manifest) {
  std::set<std::string> ids;
  for (const auto& e : manifest.entries) {
    if (e.clip_id.empty()) throw Error(ErrorCode::kFormat, "empty clip_id");
    if (!ids.insert(e.clip_id).second) {
      throw Error(ErrorCode::kFormat, "duplicate clip_id " + e.clip_id);
    }
  }
}

CorpusManifest LoadManifest(const std::filesystem::path& path) {
  const CsvTable table = ReadCsv(path);
  const size_t id_col = table.Column("clip_id");
  const size_t path_col = table.Column("path");
  const size_t role_col = table.Column("role");
  CorpusManifest manifest;
  const auto base = path.parent_path();
  for (const auto& row : table.rows) {
    ManifestEntry entry;
    entry.clip_id = row[id_col];
    std::filesystem::path p = row[path_col];
    entry.path = p.is_absolute() ? p : base / p;
    if (row[role_col] == "background") {
      entry.role = ClipRole::kBackground;
    } else if (row[role_col] == "evaluation") {
      entry.role = ClipRole::kEvaluation;
    } else {
      throw Error(ErrorCode::kFormat, "invalid role '" + row[role_col] + "'");
    }
    manifest.entries.push_back(std::move(entry));
  }
  ValidateManifest(manifest);
  return manifest;
}

void SaveManifest(const CorpusManifest& manifest,
                  const std::filesystem::path& path) {
  std::string text = CsvLine({"clip_id", "path", "role"});
  for (const auto& e : manifest.entries) {
    text += CsvLine({e.clip_id, e.path.string(),
                     e.role == ClipRole::kBackground ? "background"
                                                     : "evaluation"});
  }
  WriteFile(path, text);
}

}  // namespace fadtk
