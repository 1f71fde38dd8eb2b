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

#include "fadtk/distortion.h"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <utility>

#include "fadtk/butterworth.h"
#include "fadtk/csv.h"
#include "fadtk/error.h"
#include "fadtk/griffin_lim.h"
#include "fadtk/mel.h"
#include "fadtk/phase_vocoder.h"
#include "fadtk/random.h"
#include "fadtk/stft.h"

namespace fadtk {
namespace {

struct FamilyInfo {
  DistortionFamily family;
  std::string_view name;
  std::vector<std::string> params;
};

const std::vector<FamilyInfo>& FamilyTable() {
  static const std::vector<FamilyInfo> table = {
      {DistortionFamily::kGaussianNoise, "gaussian_noise", {"stddev"}},
      {DistortionFamily::kPops, "pops", {"percentage"}},
      {DistortionFamily::kLowpass, "lowpass", {"critical_freq"}},
      {DistortionFamily::kHighpass, "highpass", {"critical_freq"}},
      {DistortionFamily::kQuantization, "quantization", {"bits"}},
      {DistortionFamily::kGriffinLim, "griffin_lim", {"iterations"}},
      {DistortionFamily::kGriffinLimZero, "griffin_lim_zero", {"iterations"}},
      {DistortionFamily::kMelWide, "mel_wide", {"num_bands"}},
      {DistortionFamily::kMelNarrow, "mel_narrow", {"num_bands"}},
      {DistortionFamily::kSpeed, "speed", {"factor"}},
      {DistortionFamily::kSpeedPitchPreserving, "speed_pp", {"factor"}},
      {DistortionFamily::kPitch, "pitch", {"semitones"}},
      {DistortionFamily::kReverb, "reverb", {"dampening", "delay", "echos"}},
  };
  return table;
}

const FamilyInfo& Info(DistortionFamily family) {
  for (const auto& info : FamilyTable()) {
    if (info.family == family) return info;
  }
  throw Error(ErrorCode::kSpec, "unknown distortion family");
}

bool IsWhole(double v) { return std::isfinite(v) && v == std::floor(v); }

void Require(bool ok, const DistortionSpec& spec, const std::string& what) {
  if (!ok) {
    throw Error(ErrorCode::kSpec, std::string(FamilyName(spec.family)) +
                                      ": " + what);
  }
}

AudioClip AddGaussianNoise(const AudioClip& clip, double stddev,
                           uint64_t seed) {
  AudioClip out = clip;
  if (stddev == 0) return out;
  Rng rng(seed);
  for (double& s : out.samples) s += stddev * rng.Normal();
  return out;
}

AudioClip AddPops(const AudioClip& clip, double percentage, uint64_t seed) {
  AudioClip out = clip;
  const size_t n = clip.size();
  const auto count = std::min<size_t>(
      n, static_cast<size_t>(
             std::llround(percentage / 100.0 * static_cast<double>(n))));
  if (count == 0) return out;
  std::vector<size_t> indices(n);
  std::iota(indices.begin(), indices.end(), size_t{0});
  Rng rng(seed);
  for (size_t i = 0; i < count; ++i) {
    const size_t j = i + static_cast<size_t>(rng.Below(n - i));
    std::swap(indices[i], indices[j]);
  }
  const size_t negatives = count / 2;
  for (size_t i = 0; i < count; ++i) {
    out.samples[indices[i]] = i < negatives ? -1.0 : 1.0;
  }
  return out;
}

AudioClip Quantize(const AudioClip& clip, int bits) {
  AudioClip out = clip;
  const double levels = std::ldexp(1.0, bits - 1);
  const double top = 1.0 - 1.0 / levels;
  for (double& s : out.samples) {
    s = std::clamp(std::round(s * levels) / levels, -1.0, top);
  }
  return out;
}

AudioClip GriffinLimResynthesis(const AudioClip& clip, int iterations,
                                PhaseInit init, uint64_t seed) {
  if (clip.size() == 0) return clip;
  const StftConfig& cfg = kDistortionStft;
  const Spectrogram spec = StftCentered(clip, cfg);
  const AudioClip full = GriffinLim(spec.Magnitude(), cfg, iterations, init,
                                    seed, clip.sample_rate);
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(clip.size(), 0.0);
  const size_t pad = cfg.window_length / 2;
  for (size_t i = 0; i < clip.size() && pad + i < full.size(); ++i) {
    out.samples[i] = full.samples[pad + i];
  }
  return out;
}

AudioClip MelEncode(const AudioClip& clip, int bands, double f_min,
                    double f_max) {
  if (clip.size() == 0) return clip;
  const StftConfig& cfg = kDistortionStft;
  const MelFilterbank bank =
      MakeMelFilterbank(bands, f_min, f_max, cfg, clip.sample_rate);
  const Eigen::MatrixXd inverse =
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(bank.weights)
          .pseudoInverse();
  Spectrogram spec = StftCentered(clip, cfg);
  const Eigen::MatrixXd magnitude = spec.Magnitude();
  const Eigen::MatrixXd mel = magnitude * bank.weights.transpose();
  const Eigen::MatrixXd restored =
      (mel * inverse.transpose()).cwiseMax(0.0);
  for (Eigen::Index t = 0; t < spec.frames.rows(); ++t) {
    for (Eigen::Index k = 0; k < spec.frames.cols(); ++k) {
      const auto z = spec.frames(t, k);
      const double phase = std::abs(z) > 0 ? std::arg(z) : 0.0;
      spec.frames(t, k) = std::polar(restored(t, k), phase);
    }
  }
  return IstftCentered(spec, clip.size());
}

AudioClip ChangeSpeed(const AudioClip& clip, double factor) {
  return AudioClip{ResampleByRatio(clip.samples, factor), clip.sample_rate};
}

AudioClip ShiftPitch(const AudioClip& clip, double semitones) {
  const double ratio = std::pow(2.0, semitones / 12.0);
  const AudioClip shifted{ResampleByRatio(clip.samples, 1.0 / ratio),
                          clip.sample_rate};
  AudioClip out = PhaseVocoderStretch(shifted, ratio);
  out.samples.resize(clip.size(), 0.0);
  return out;
}

AudioClip Reverberate(const AudioClip& clip, double dampening, double delay,
                      int echos) {
  AudioClip out = clip;
  const auto step = static_cast<size_t>(std::llround(delay * clip.sample_rate));
  double gain = 1.0;
  for (int k = 1; k <= echos; ++k) {
    gain *= dampening;
    const size_t offset = step * static_cast<size_t>(k);
    if (gain == 0 || offset >= clip.size()) continue;
    for (size_t t = offset; t < clip.size(); ++t) {
      out.samples[t] += gain * clip.samples[t - offset];
    }
  }
  return out;
}

}  // namespace

std::string_view FamilyName(DistortionFamily family) {
  return Info(family).name;
}

DistortionFamily ParseFamily(std::string_view name) {
  for (const auto& info : FamilyTable()) {
    if (info.name == name) return info.family;
  }
  throw Error(ErrorCode::kSpec,
              "unknown distortion family '" + std::string(name) + "'");
}

const std::vector<DistortionFamily>& AllFamilies() {
  static const std::vector<DistortionFamily> all = [] {
    std::vector<DistortionFamily> v;
    for (const auto& info : FamilyTable()) v.push_back(info.family);
    return v;
  }();
  return all;
}

std::vector<std::string> RequiredParams(DistortionFamily family) {
  return Info(family).params;
}

double DistortionSpec::Param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) {
    throw Error(ErrorCode::kSpec, std::string(FamilyName(family)) +
                                      ": missing parameter '" + name + "'");
  }
  return it->second;
}

std::string DistortionSpec::ParamString() const {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out.push_back(';');
    out += name + "=" + FormatDouble(value);
  }
  return out;
}

void DistortionSpec::Validate() const {
  const auto required = RequiredParams(family);
  for (const auto& name : required) Param(name);
  Require(params.size() == required.size(), *this, "unexpected parameter");
  for (const auto& [name, value] : params) {
    Require(std::isfinite(value), *this, name + " must be finite");
  }
  switch (family) {
    case DistortionFamily::kGaussianNoise:
      Require(Param("stddev") >= 0, *this, "stddev must be >= 0");
      break;
    case DistortionFamily::kPops:
      Require(Param("percentage") >= 0 && Param("percentage") <= 100, *this,
              "percentage must be in [0, 100]");
      break;
    case DistortionFamily::kLowpass:
    case DistortionFamily::kHighpass:
      Require(Param("critical_freq") > 0 &&
                  Param("critical_freq") < kCanonicalSampleRate / 2.0,
              *this, "critical_freq must be in (0, 8000)");
      break;
    case DistortionFamily::kQuantization:
      Require(IsWhole(Param("bits")) && Param("bits") >= 1 &&
                  Param("bits") <= 32,
              *this, "bits must be an integer in [1, 32]");
      break;
    case DistortionFamily::kGriffinLim:
    case DistortionFamily::kGriffinLimZero:
      Require(IsWhole(Param("iterations")) && Param("iterations") >= 0, *this,
              "iterations must be a nonnegative integer");
      break;
    case DistortionFamily::kMelWide:
    case DistortionFamily::kMelNarrow:
      Require(IsWhole(Param("num_bands")) && Param("num_bands") >= 1, *this,
              "num_bands must be a positive integer");
      break;
    case DistortionFamily::kSpeed:
    case DistortionFamily::kSpeedPitchPreserving:
      Require(Param("factor") > 0, *this, "factor must be > 0");
      break;
    case DistortionFamily::kPitch:
      Require(std::abs(Param("semitones")) <= 48, *this,
              "semitones must be within +-48");
      break;
    case DistortionFamily::kReverb:
      Require(Param("dampening") >= 0, *this, "dampening must be >= 0");
      Require(Param("delay") >= 0, *this, "delay must be >= 0");
      Require(IsWhole(Param("echos")) && Param("echos") >= 0, *this,
              "echos must be a nonnegative integer");
      break;
  }
}

DistortionSpec MakeSpec(std::string_view family, std::string_view params,
                        uint64_t seed) {
  DistortionSpec spec;
  spec.family = ParseFamily(family);
  spec.seed = seed;
  size_t pos = 0;
  while (pos < params.size()) {
    size_t end = params.find(';', pos);
    if (end == std::string_view::npos) end = params.size();
    const std::string_view item = params.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kSpec,
                  "expected name=value, got '" + std::string(item) + "'");
    }
    const std::string name(item.substr(0, eq));
    double value = 0;
    try {
      value = ParseDouble(item.substr(eq + 1));
    } catch (const Error&) {
      throw Error(ErrorCode::kSpec, "bad value for parameter '" + name + "'");
    }
    if (!spec.params.emplace(name, value).second) {
      throw Error(ErrorCode::kSpec, "duplicate parameter '" + name + "'");
    }
  }
  spec.Validate();
  return spec;
}

uint64_t ClipSeed(uint64_t spec_seed, std::string_view clip_id) {
  return DeriveSeed(spec_seed, HashString(clip_id));
}

AudioClip ApplyDistortion(const AudioClip& clip, const DistortionSpec& spec) {
  spec.Validate();
  if (clip.sample_rate != kCanonicalSampleRate) {
    throw Error(ErrorCode::kArgument, "distortions expect 16 kHz audio");
  }
  const AudioClip input = NormalizePeak(clip);
  AudioClip out;
  switch (spec.family) {
    case DistortionFamily::kGaussianNoise:
      out = AddGaussianNoise(input, spec.Param("stddev"), spec.seed);
      break;
    case DistortionFamily::kPops:
      out = AddPops(input, spec.Param("percentage"), spec.seed);
      break;
    case DistortionFamily::kLowpass:
      out = ButterworthFilterClip(input, FilterKind::kLowpass,
                                  spec.Param("critical_freq"));
      break;
    case DistortionFamily::kHighpass:
      out = ButterworthFilterClip(input, FilterKind::kHighpass,
                                  spec.Param("critical_freq"));
      break;
    case DistortionFamily::kQuantization:
      out = Quantize(input, static_cast<int>(spec.Param("bits")));
      break;
    case DistortionFamily::kGriffinLim:
      out = GriffinLimResynthesis(input,
                                  static_cast<int>(spec.Param("iterations")),
                                  PhaseInit::kRandom, spec.seed);
      break;
    case DistortionFamily::kGriffinLimZero:
      out = GriffinLimResynthesis(input,
                                  static_cast<int>(spec.Param("iterations")),
                                  PhaseInit::kZero, spec.seed);
      break;
    case DistortionFamily::kMelWide:
      out = MelEncode(input, static_cast<int>(spec.Param("num_bands")), 0.0,
                      input.sample_rate / 2.0);
      break;
    case DistortionFamily::kMelNarrow:
      out = MelEncode(input, static_cast<int>(spec.Param("num_bands")), 60.0,
                      6000.0);
      break;
    case DistortionFamily::kSpeed:
      out = ChangeSpeed(input, spec.Param("factor"));
      break;
    case DistortionFamily::kSpeedPitchPreserving:
      out = PhaseVocoderStretch(input, spec.Param("factor"));
      break;
    case DistortionFamily::kPitch:
      out = ShiftPitch(input, spec.Param("semitones"));
      break;
    case DistortionFamily::kReverb:
      out = Reverberate(input, spec.Param("dampening"), spec.Param("delay"),
                        static_cast<int>(spec.Param("echos")));
      break;
  }
  return NormalizePeak(out);
}

SweepGrid SweepGrid::Filter(
    const std::vector<DistortionFamily>& families) const {
  if (families.empty()) return *this;
  SweepGrid out;
  out.source = source;
  for (const auto& spec : entries) {
    if (std::find(families.begin(), families.end(), spec.family) !=
        families.end()) {
      out.entries.push_back(spec);
    }
  }
  return out;
}

SweepGrid BuiltinGrid(uint64_t seed) {
  SweepGrid grid;
  grid.source = "builtin";
  auto add = [&](DistortionFamily family,
                 std::map<std::string, double> params) {
    grid.entries.push_back(DistortionSpec{family, std::move(params), seed});
  };
  const std::vector<double> slow_down = {1.01, 1.02, 1.05, 1.1, 1.2, 1.3, 1.5,
                                         1.7,  2,    2.5,  3,   4,   5};
  const std::vector<double> speed_up = {0.99, 0.98, 0.95, 0.9, 0.8, 0.7,
                                        0.6,  0.5,  0.4,  0.2, 0.1};
  const std::vector<double> semitones = {0.05, 0.1, 0.15, 0.2, 0.25, 0.5, 0.75,
                                         1,    1.5, 2,    2.5, 3,    4,   5};
  const std::vector<double> dampening = {0.1, 0.2, 0.3, 0.4, 0.5,
                                         0.6, 0.7, 0.8, 0.9};
  const std::vector<double> log_steps = {0.0001, 0.00031, 0.001, 0.0031,
                                         0.01,   0.031,   0.1,   0.31};
  for (auto family : {DistortionFamily::kSpeed,
                      DistortionFamily::kSpeedPitchPreserving}) {
    for (double f : slow_down) add(family, {{"factor", f}});
    for (double f : speed_up) add(family, {{"factor", f}});
  }
  for (double s : semitones) add(DistortionFamily::kPitch, {{"semitones", s}});
  for (double s : semitones) add(DistortionFamily::kPitch, {{"semitones", -s}});
  const std::array<std::pair<double, double>, 4> reverb_variants = {
      {{1.0, 3}, {0.5, 3}, {0.25, 3}, {0.25, 5}}};
  for (const auto& [delay, echos] : reverb_variants) {
    for (double a : dampening) {
      add(DistortionFamily::kReverb,
          {{"dampening", a}, {"delay", delay}, {"echos", echos}});
    }
  }
  for (double s : log_steps) add(DistortionFamily::kGaussianNoise, {{"stddev", s}});
  for (double p : log_steps) add(DistortionFamily::kPops, {{"percentage", p}});
  for (double f : {5000, 4000, 3000, 2000, 1500, 1000, 750, 500, 400, 300}) {
    add(DistortionFamily::kLowpass, {{"critical_freq", f}});
  }
  for (double f : {200, 300, 400, 500, 750, 1000, 1500, 2000, 3000, 4000}) {
    add(DistortionFamily::kHighpass, {{"critical_freq", f}});
  }
  for (double b : {9, 8, 7, 6, 5, 4, 3, 2}) {
    add(DistortionFamily::kQuantization, {{"bits", b}});
  }
  for (auto family :
       {DistortionFamily::kGriffinLim, DistortionFamily::kGriffinLimZero}) {
    for (double it : {500, 200, 100, 50, 20, 10, 5, 1}) {
      add(family, {{"iterations", it}});
    }
  }
  for (double b : {264, 128, 64, 32}) {
    add(DistortionFamily::kMelWide, {{"num_bands", b}});
  }
  for (double b : {264, 128, 64, 32, 16, 8}) {
    add(DistortionFamily::kMelNarrow, {{"num_bands", b}});
  }
  return grid;
}

SweepGrid ParseGrid(std::string_view text) {
  const CsvTable table = ParseCsv(text);
  SweepGrid grid;
  grid.source = "file";
  if (table.header.empty()) return grid;
  const size_t family = table.Column("family");
  const size_t params = table.Column("params");
  const size_t seed = table.Column("seed");
  for (const auto& row : table.rows) {
    grid.entries.push_back(MakeSpec(
        row[family], row[params],
        static_cast<uint64_t>(std::stoull(row[seed]))));
  }
  return grid;
}

SweepGrid LoadGrid(const std::filesystem::path& path) {
  SweepGrid grid = ParseGrid(ReadFile(path));
  grid.source = path.string();
  return grid;
}

std::string FormatGrid(const SweepGrid& grid) {
  std::string out = CsvLine({"family", "params", "seed"});
  for (const auto& spec : grid.entries) {
    out += CsvLine({std::string(FamilyName(spec.family)), spec.ParamString(),
                    std::to_string(spec.seed)});
  }
  return out;
}

}  // namespace fadtk
