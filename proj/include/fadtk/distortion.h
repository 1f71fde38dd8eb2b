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

#ifndef FADTK_DISTORTION_H_
#define FADTK_DISTORTION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fadtk/audio_io.h"

namespace fadtk {

enum class DistortionFamily {
  kGaussianNoise,
  kPops,
  kLowpass,
  kHighpass,
  kQuantization,
  kGriffinLim,
  kGriffinLimZero,
  kMelWide,
  kMelNarrow,
  kSpeed,
  kSpeedPitchPreserving,
  kPitch,
  kReverb,
};

std::string_view FamilyName(DistortionFamily family);
DistortionFamily ParseFamily(std::string_view name);
const std::vector<DistortionFamily>& AllFamilies();

// Parameter names a family requires, sorted.
std::vector<std::string> RequiredParams(DistortionFamily family);

struct DistortionSpec {
  DistortionFamily family = DistortionFamily::kGaussianNoise;
  std::map<std::string, double> params;
  uint64_t seed = 0;

  double Param(const std::string& name) const;
  // `name=value;name=value` in name order.
  std::string ParamString() const;
  // Throws kSpec unless params hold exactly the required keys with values
  // in range.
  void Validate() const;
};

// Parses `name=value;...` into a spec.
DistortionSpec MakeSpec(std::string_view family, std::string_view params,
                        uint64_t seed);

// Applies one distortion to a 16 kHz mono clip. The input is peak-normalized
// first, the output is peak-normalized, and the result depends only on
// (clip, spec).
AudioClip ApplyDistortion(const AudioClip& clip, const DistortionSpec& spec);

// Seed used for a specific clip within a sweep, so that every clip draws
// independent randomness regardless of processing order.
uint64_t ClipSeed(uint64_t spec_seed, std::string_view clip_id);

struct SweepGrid {
  std::vector<DistortionSpec> entries;
  std::string source = "builtin";

  // Keeps only the given families (all if empty).
  SweepGrid Filter(const std::vector<DistortionFamily>& families) const;
};

// Every examined configuration of the published parameter table, plus the
// 5000 Hz low-pass configuration used in the listening test.
SweepGrid BuiltinGrid(uint64_t seed = 0);

// CSV with header `family,params,seed`, params as `name=value;...`.
SweepGrid ParseGrid(std::string_view text);
SweepGrid LoadGrid(const std::filesystem::path& path);
std::string FormatGrid(const SweepGrid& grid);

}  // namespace fadtk

#endif  // FADTK_DISTORTION_H_
