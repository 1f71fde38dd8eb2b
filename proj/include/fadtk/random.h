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

#ifndef FADTK_RANDOM_H_
#define FADTK_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace fadtk {

// SplitMix64 finalizer over (seed, stream). Used to derive independent
// per-clip and per-purpose streams so results never depend on the order in
// which work items are scheduled.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// FNV-1a, stable across platforms.
uint64_t HashString(std::string_view text);

// Seeded generator with platform-independent output. std::mt19937_64 is
// fully specified by the standard; the distributions below are implemented
// here because the standard library ones are not.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Uniform();
  // Standard normal (Box-Muller).
  double Normal();
  // Uniform integer in [0, bound).
  uint64_t Below(uint64_t bound);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace fadtk

#endif  // FADTK_RANDOM_H_
