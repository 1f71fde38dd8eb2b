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

#include <gtest/gtest.h>

#include <set>

#include "fadtk/csv.h"
#include "fadtk/error.h"
#include "fadtk/signal_metrics.h"
#include "fadtk/synthetic.h"
#include "test_util.h"

namespace fadtk {
namespace {

using testing::RandomSignal;
using testing::Sine;

AudioClip Music(double seconds = 2.0, uint64_t seed = 11) {
  return SynthesizeMusicClip(seed, seconds);
}

double Peak(const AudioClip& clip) {
  double p = 0;
  for (double v : clip.samples) p = std::max(p, std::abs(v));
  return p;
}

TEST(DistortionSpec, ParsingAndValidation) {
  const DistortionSpec spec =
      MakeSpec("reverb", "echos=3;dampening=0.5;delay=0.25", 7);
  EXPECT_EQ(spec.family, DistortionFamily::kReverb);
  EXPECT_EQ(spec.ParamString(), "dampening=0.5;delay=0.25;echos=3");
  EXPECT_EQ(spec.seed, 7u);
  for (const auto& [family, params] :
       std::vector<std::pair<std::string, std::string>>{
           {"chorus", "depth=1"},
           {"gaussian_noise", ""},
           {"gaussian_noise", "stddev=0.1;extra=1"},
           {"gaussian_noise", "stddev=-1"},
           {"quantization", "bits=2.5"},
           {"lowpass", "critical_freq=9000"},
           {"pops", "percentage=abc"}}) {
    try {
      MakeSpec(family, params, 0).Validate();
      FAIL() << family << " " << params;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSpec);
    }
  }
}

TEST(ApplyDistortion, EveryFamilyIsDeterministicAndNormalized) {
  const AudioClip clip = Music();
  for (const DistortionSpec& spec :
       {MakeSpec("gaussian_noise", "stddev=0.01", 1),
        MakeSpec("pops", "percentage=0.1", 1),
        MakeSpec("lowpass", "critical_freq=1000", 1),
        MakeSpec("highpass", "critical_freq=1000", 1),
        MakeSpec("quantization", "bits=4", 1),
        MakeSpec("griffin_lim", "iterations=5", 1),
        MakeSpec("griffin_lim_zero", "iterations=5", 1),
        MakeSpec("mel_wide", "num_bands=32", 1),
        MakeSpec("mel_narrow", "num_bands=8", 1),
        MakeSpec("speed", "factor=0.9", 1),
        MakeSpec("speed_pp", "factor=1.1", 1),
        MakeSpec("pitch", "semitones=-0.5", 1),
        MakeSpec("reverb", "dampening=0.5;delay=0.25;echos=3", 1)}) {
    const AudioClip a = ApplyDistortion(clip, spec);
    const AudioClip b = ApplyDistortion(clip, spec);
    EXPECT_EQ(a.samples, b.samples) << spec.ParamString();
    EXPECT_NEAR(Peak(a), 1.0, 1e-12) << FamilyName(spec.family);
    EXPECT_EQ(EncodeWav16(a), EncodeWav16(b));
  }
}

TEST(ApplyDistortion, LoudnessInvariance) {
  const AudioClip clip = Music();
  AudioClip quiet = clip;
  for (double& v : quiet.samples) v *= 0.125;
  for (const DistortionSpec& spec :
       {MakeSpec("gaussian_noise", "stddev=0.1", 3),
        MakeSpec("pops", "percentage=1", 3),
        MakeSpec("reverb", "dampening=0.3;delay=0.5;echos=3", 3),
        MakeSpec("mel_narrow", "num_bands=16", 3)}) {
    const AudioClip a = ApplyDistortion(clip, spec);
    const AudioClip b = ApplyDistortion(quiet, spec);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      ASSERT_NEAR(a.samples[i], b.samples[i], 1e-12);
    }
  }
}

TEST(GaussianNoise, ZeroSigmaIsIdentity) {
  const AudioClip clip = NormalizePeak(Music());
  EXPECT_EQ(ApplyDistortion(clip, MakeSpec("gaussian_noise", "stddev=0", 4))
                .samples,
            clip.samples);
}

TEST(GaussianNoise, SeedChangesNoiseAndVarianceMatches) {
  AudioClip base{std::vector<double>(20000, 0.0), 16000};
  base.samples[0] = 1.0;
  const auto a = ApplyDistortion(base, MakeSpec("gaussian_noise", "stddev=0.01", 1));
  const auto b = ApplyDistortion(base, MakeSpec("gaussian_noise", "stddev=0.01", 2));
  EXPECT_NE(a.samples, b.samples);
  // Dividing by the spike undoes the output normalization up to 1 + n[0].
  std::vector<double> noise(a.samples.begin() + 1, a.samples.end());
  for (double& v : noise) v /= a.samples[0];
  const double sd = testing::Rms(noise);
  EXPECT_NEAR(sd, 0.01, 0.0005);
}

TEST(Pops, ExactCountsAndSigns) {
  AudioClip clip = NormalizePeak(Music(1.0));
  const size_t n = clip.size();
  for (double p : {0.0001, 0.031, 1.0, 10.0}) {
    const AudioClip out =
        ApplyDistortion(clip, MakeSpec("pops", "percentage=" + std::to_string(p), 9));
    const auto expected = static_cast<size_t>(std::llround(p / 100.0 * n));
    size_t changed = 0, minus = 0, plus = 0;
    for (size_t i = 0; i < n; ++i) {
      if (out.samples[i] != clip.samples[i]) {
        ++changed;
        if (out.samples[i] == -1.0) ++minus;
        if (out.samples[i] == 1.0) ++plus;
      }
    }
    // A pop landing on a sample that already equals its value is invisible.
    EXPECT_LE(changed, expected);
    EXPECT_GE(changed + 2, expected);
    EXPECT_LE(minus, expected / 2);
    EXPECT_LE(plus, expected - expected / 2);
  }
  AudioClip zeros{std::vector<double>(1000, 0.0), 16000};
  zeros.samples[0] = 0.5;
  const AudioClip popped =
      ApplyDistortion(zeros, MakeSpec("pops", "percentage=0.5", 2));
  int m = 0, p = 0;
  for (size_t i = 1; i < popped.size(); ++i) {
    m += popped.samples[i] == -1.0;
    p += popped.samples[i] == 1.0;
  }
  EXPECT_EQ(m + p, 5);
  EXPECT_EQ(m, 2);
  EXPECT_EQ(p, 3);
}

TEST(Quantization, ClosedFormAndLevels) {
  const AudioClip clip = NormalizePeak({RandomSignal(5000, 12, 1.0), 16000});
  for (int q : {2, 3, 5, 9}) {
    const AudioClip out = ApplyDistortion(
        clip, MakeSpec("quantization", "bits=" + std::to_string(q), 0));
    std::set<double> levels(out.samples.begin(), out.samples.end());
    EXPECT_LE(levels.size(), size_t{1} << q);
    // Oracle: quantize, then renormalize to the peak.
    const double scale = std::ldexp(1.0, q - 1);
    std::vector<double> expect(clip.size());
    double peak = 0;
    for (size_t i = 0; i < clip.size(); ++i) {
      expect[i] = std::clamp(std::round(clip.samples[i] * scale) / scale, -1.0,
                             1.0 - 1.0 / scale);
      peak = std::max(peak, std::abs(expect[i]));
    }
    for (size_t i = 0; i < clip.size(); ++i) {
      EXPECT_NEAR(out.samples[i], expect[i] / peak, 1e-12);
    }
  }
}

TEST(Quantization, SixteenBitsOnSixteenBitAudioIsIdentity) {
  std::vector<double> x(4000);
  std::mt19937_64 gen(5);
  for (double& v : x) {
    v = static_cast<double>(static_cast<int>(gen() % 65536) - 32768) / 32768;
  }
  x[17] = -1.0;
  const AudioClip clip{x, 16000};
  const AudioClip out =
      ApplyDistortion(clip, MakeSpec("quantization", "bits=16", 0));
  for (size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(out.samples[i], x[i], 1.0 / 32768);
  }
}

TEST(Filters, LowpassKeepsBassHighpassKeepsTreble) {
  AudioClip mix = Sine(200.0, 1.0);
  const AudioClip treble = Sine(5000.0, 1.0);
  for (size_t i = 0; i < mix.size(); ++i) mix.samples[i] += treble.samples[i];
  const AudioClip low =
      ApplyDistortion(mix, MakeSpec("lowpass", "critical_freq=1000", 0));
  const AudioClip high =
      ApplyDistortion(mix, MakeSpec("highpass", "critical_freq=1000", 0));
  EXPECT_NEAR(testing::PeakFrequency(low.samples, 16000, 8000), 200.0, 1.0);
  EXPECT_NEAR(testing::PeakFrequency(high.samples, 16000, 8000), 5000.0, 1.0);
}

TEST(GriffinLim, MoreIterationsReconstructBetter) {
  const AudioClip clip = Music(1.5, 4);
  const double few = MagnitudeL2(
      clip, ApplyDistortion(clip, MakeSpec("griffin_lim", "iterations=1", 2)));
  const double many = MagnitudeL2(
      clip, ApplyDistortion(clip, MakeSpec("griffin_lim", "iterations=100", 2)));
  EXPECT_LT(many, few);
  const AudioClip zero =
      ApplyDistortion(clip, MakeSpec("griffin_lim_zero", "iterations=5", 2));
  EXPECT_EQ(zero.size(), clip.size());
  EXPECT_EQ(zero.samples,
            ApplyDistortion(clip, MakeSpec("griffin_lim_zero", "iterations=5", 99))
                .samples);
}

TEST(MelEncode, MoreBandsPreserveMoreDetail) {
  const AudioClip clip = Music(1.5, 5);
  double previous = 1e9;
  for (int bands : {8, 32, 128, 264}) {
    const AudioClip out = ApplyDistortion(
        clip, MakeSpec("mel_wide", "num_bands=" + std::to_string(bands), 0));
    ASSERT_EQ(out.size(), clip.size());
    const double err = MagnitudeL2(clip, out);
    EXPECT_LT(err, previous) << bands;
    previous = err;
  }
}

TEST(Speed, DurationAndPitchFollowFactor) {
  const AudioClip clip = Sine(1000.0, 5.0);
  const AudioClip half = ApplyDistortion(clip, MakeSpec("speed", "factor=0.5", 0));
  EXPECT_EQ(half.size(), 40000u);
  const AudioClip slow = ApplyDistortion(Sine(1000.0, 1.0),
                                         MakeSpec("speed", "factor=2", 0));
  EXPECT_EQ(slow.size(), 32000u);
  EXPECT_NEAR(testing::PeakFrequency(slow.samples, 16000, 2000), 500.0, 1.0);
  const AudioClip pp = ApplyDistortion(Sine(1000.0, 1.0),
                                       MakeSpec("speed_pp", "factor=2", 0));
  EXPECT_EQ(pp.size(), 32000u);
  EXPECT_NEAR(testing::PeakFrequency(pp.samples, 16000, 2000), 1000.0, 1.0);
}

TEST(Pitch, ShiftsFrequencyKeepsLength) {
  const AudioClip clip = Sine(440.0, 1.0);
  for (double s : {-2.0, 1.0, 3.0}) {
    const AudioClip out = ApplyDistortion(
        clip, MakeSpec("pitch", "semitones=" + std::to_string(s), 0));
    EXPECT_EQ(out.size(), clip.size());
    EXPECT_NEAR(testing::PeakFrequency(out.samples, 16000, 2000),
                440.0 * std::pow(2.0, s / 12.0), 2.0)
        << s;
  }
}

TEST(Reverb, ImpulseResponseAndIdentities) {
  AudioClip impulse{std::vector<double>(16000, 0.0), 16000};
  impulse.samples[0] = 1.0;
  const AudioClip out = ApplyDistortion(
      impulse, MakeSpec("reverb", "dampening=0.5;delay=0.25;echos=3", 0));
  ASSERT_EQ(out.size(), impulse.size());
  EXPECT_DOUBLE_EQ(out.samples[0], 1.0);
  EXPECT_DOUBLE_EQ(out.samples[4000], 0.5);
  EXPECT_DOUBLE_EQ(out.samples[8000], 0.25);
  EXPECT_DOUBLE_EQ(out.samples[12000], 0.125);
  double rest = 0;
  for (size_t i = 1; i < out.size(); ++i) {
    if (i % 4000) rest += std::abs(out.samples[i]);
  }
  EXPECT_EQ(rest, 0.0);

  const AudioClip clip = NormalizePeak(Music(1.0));
  EXPECT_EQ(ApplyDistortion(clip, MakeSpec("reverb",
                                           "dampening=0;delay=0.1;echos=3", 0))
                .samples,
            clip.samples);
  EXPECT_EQ(ApplyDistortion(clip, MakeSpec("reverb",
                                           "dampening=0.7;delay=0.1;echos=0", 0))
                .samples,
            clip.samples);
}

TEST(ClipSeed, DependsOnClipNotOrder) {
  EXPECT_EQ(ClipSeed(5, "a"), ClipSeed(5, "a"));
  EXPECT_NE(ClipSeed(5, "a"), ClipSeed(5, "b"));
  EXPECT_NE(ClipSeed(5, "a"), ClipSeed(6, "a"));
}

TEST(BuiltinGrid, Contents) {
  const SweepGrid grid = BuiltinGrid(3);
  EXPECT_EQ(grid.entries.size(), 182u);
  std::map<DistortionFamily, int> counts;
  bool has_sigma = false;
  std::set<std::string> reverb_variants;
  for (const auto& spec : grid.entries) {
    ++counts[spec.family];
    EXPECT_EQ(spec.seed, 3u);
    EXPECT_NO_THROW(spec.Validate());
    if (spec.family == DistortionFamily::kGaussianNoise &&
        spec.Param("stddev") == 0.031) {
      has_sigma = true;
    }
    if (spec.family == DistortionFamily::kReverb) {
      reverb_variants.insert(FormatDouble(spec.Param("delay")) + "/" +
                             FormatDouble(spec.Param("echos")));
    }
  }
  EXPECT_TRUE(has_sigma);
  EXPECT_EQ(counts[DistortionFamily::kReverb], 36);
  EXPECT_EQ(reverb_variants.size(), 4u);
  EXPECT_EQ(counts[DistortionFamily::kMelNarrow], 6);
  EXPECT_EQ(counts[DistortionFamily::kMelWide], 4);
  EXPECT_EQ(counts[DistortionFamily::kGaussianNoise], 8);
  EXPECT_EQ(counts[DistortionFamily::kQuantization], 8);
  EXPECT_EQ(counts[DistortionFamily::kSpeed], 24);
  EXPECT_EQ(counts[DistortionFamily::kPitch], 28);
  EXPECT_EQ(counts[DistortionFamily::kLowpass], 10);
  EXPECT_EQ(grid.Filter({DistortionFamily::kPops}).entries.size(), 8u);
  EXPECT_EQ(grid.Filter({}).entries.size(), 182u);
}

TEST(GridFile, RoundTrip) {
  const SweepGrid grid = BuiltinGrid(42);
  const SweepGrid back = ParseGrid(FormatGrid(grid));
  ASSERT_EQ(back.entries.size(), grid.entries.size());
  for (size_t i = 0; i < grid.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].family, grid.entries[i].family);
    EXPECT_EQ(back.entries[i].params, grid.entries[i].params);
    EXPECT_EQ(back.entries[i].seed, 42u);
  }
  EXPECT_THROW(ParseGrid("family,params,seed\nnope,x=1,0\n"), Error);
}

}  // namespace
}  // namespace fadtk
