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

#ifndef FADTK_STUDIES_H_
#define FADTK_STUDIES_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fadtk/pipeline.h"

namespace fadtk {

struct DispersionRow {
  size_t eval_size = 0;
  std::string family;
  std::string params;
  double mean_fad = 0;
  // Population variance over repeats.
  double variance = 0;
  // variance / mean, 0 when the variance is 0.
  double dispersion = 0;
};

struct DispersionReport {
  std::vector<DispersionRow> rows;
  // Mean dispersion over configs, per size.
  std::map<size_t, double> average_dispersion;
};

struct DispersionOptions {
  std::vector<size_t> sizes = {50, 100, 300};
  int repeats = 20;
  uint64_t seed = 0;
  WindowingPolicy policy;
  int threads = 1;
};

// Indices of the random subset for (size, repeat). Same for every config.
std::vector<size_t> DispersionSubset(size_t population, size_t size,
                                     int repeat, uint64_t seed);

DispersionReport DispersionStudy(const ClipSet& background,
                                 const ClipSet& evaluation,
                                 const SweepGrid& grid,
                                 const EmbeddingBackend& backend,
                                 const DispersionOptions& options);

std::string FormatDispersionReport(const DispersionReport& report);

struct StepStudyRow {
  double step = 0;
  std::string family;
  std::string params;
  double fad = 0;
};

// FAD per (step, config) with background statistics recomputed per step.
std::vector<StepStudyRow> StepLengthStudy(const ClipSet& background,
                                          const ClipSet& evaluation,
                                          const SweepGrid& grid,
                                          const EmbeddingBackend& backend,
                                          const std::vector<double>& steps,
                                          int threads);

std::string FormatStepStudy(const std::vector<StepStudyRow>& rows);

}  // namespace fadtk

#endif  // FADTK_STUDIES_H_
