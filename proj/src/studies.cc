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

#include "fadtk/studies.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fadtk/csv.h"
#include "fadtk/error.h"
#include "fadtk/random.h"

namespace fadtk {

std::vector<size_t> DispersionSubset(size_t population, size_t size,
                                     int repeat, uint64_t seed) {
  if (size > population) {
    throw Error(ErrorCode::kArgument, "subset larger than corpus");
  }
  std::vector<size_t> indices(population);
  std::iota(indices.begin(), indices.end(), size_t{0});
  Rng rng(DeriveSeed(DeriveSeed(seed, size), static_cast<uint64_t>(repeat)));
  for (size_t i = 0; i < size; ++i) {
    const size_t j = i + rng.Below(population - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(size);
  std::sort(indices.begin(), indices.end());
  return indices;
}

DispersionReport DispersionStudy(const ClipSet& background,
                                 const ClipSet& evaluation,
                                 const SweepGrid& grid,
                                 const EmbeddingBackend& backend,
                                 const DispersionOptions& options) {
  options.policy.Validate();
  if (options.repeats < 1) {
    throw Error(ErrorCode::kArgument, "repeats must be positive");
  }
  for (size_t size : options.sizes) {
    if (size < 1 || size > evaluation.size()) {
      throw Error(ErrorCode::kArgument,
                  "evaluation size " + std::to_string(size) +
                      " exceeds the " + std::to_string(evaluation.size()) +
                      " available clips");
    }
  }
  DispersionReport report;
  if (grid.entries.empty()) return report;

  const GaussianStats background_stats =
      StatsOf(EmbedClips(background.ids, background.clips, backend,
                         options.policy, options.threads),
              backend.id());
  std::map<size_t, std::vector<std::vector<size_t>>> subsets;
  for (size_t size : options.sizes) {
    for (int r = 0; r < options.repeats; ++r) {
      subsets[size].push_back(
          DispersionSubset(evaluation.size(), size, r, options.seed));
    }
  }

  for (const DistortionSpec& spec : grid.entries) {
    const auto distorted = DistortClips(evaluation, spec, options.threads);
    const auto embeddings = EmbedClips(evaluation.ids, distorted, backend,
                                       options.policy, options.threads);
    for (size_t size : options.sizes) {
      std::vector<double> scores;
      for (const auto& subset : subsets[size]) {
        scores.push_back(FadScore(background_stats,
                                  StatsOf(embeddings, backend.id(), subset)));
      }
      DispersionRow row;
      row.eval_size = size;
      row.family = std::string(FamilyName(spec.family));
      row.params = spec.ParamString();
      row.mean_fad = std::accumulate(scores.begin(), scores.end(), 0.0) /
                     static_cast<double>(scores.size());
      for (double s : scores) {
        row.variance += (s - row.mean_fad) * (s - row.mean_fad);
      }
      row.variance /= static_cast<double>(scores.size());
      row.dispersion = (row.variance > 0 && row.mean_fad > 0)
                           ? row.variance / row.mean_fad
                           : 0.0;
      report.rows.push_back(row);
    }
  }
  for (size_t size : options.sizes) {
    double total = 0;
    for (const DispersionRow& row : report.rows) {
      if (row.eval_size == size) total += row.dispersion;
    }
    report.average_dispersion[size] =
        total / static_cast<double>(grid.entries.size());
  }
  return report;
}

std::string FormatDispersionReport(const DispersionReport& report) {
  std::ostringstream out;
  out << "eval_size,family,params,mean_fad,variance,dispersion\n";
  for (const DispersionRow& r : report.rows) {
    out << CsvLine({std::to_string(r.eval_size), r.family, r.params,
                    FormatDouble(r.mean_fad), FormatDouble(r.variance),
                    FormatDouble(r.dispersion)});
  }
  for (const auto& [size, d] : report.average_dispersion) {
    out << CsvLine({std::to_string(size), "average", "",
                    "", "", FormatDouble(d)});
  }
  return out.str();
}

std::vector<StepStudyRow> StepLengthStudy(const ClipSet& background,
                                          const ClipSet& evaluation,
                                          const SweepGrid& grid,
                                          const EmbeddingBackend& backend,
                                          const std::vector<double>& steps,
                                          int threads) {
  for (double step : steps) {
    if (!(step > 0 && step <= 1.0)) {
      throw Error(ErrorCode::kArgument, "steps must lie in (0, 1]");
    }
  }
  std::vector<StepStudyRow> rows;
  if (grid.entries.empty()) return rows;
  std::vector<std::vector<AudioClip>> distorted;
  for (const DistortionSpec& spec : grid.entries) {
    distorted.push_back(DistortClips(evaluation, spec, threads));
  }
  for (double step : steps) {
    WindowingPolicy policy;
    policy.step_seconds = step;
    const GaussianStats background_stats = StatsOf(
        EmbedClips(background.ids, background.clips, backend, policy, threads),
        backend.id());
    for (size_t k = 0; k < grid.entries.size(); ++k) {
      const DistortionSpec& spec = grid.entries[k];
      StepStudyRow row;
      row.step = step;
      row.family = std::string(FamilyName(spec.family));
      row.params = spec.ParamString();
      row.fad = FadScore(
          background_stats,
          StatsOf(EmbedClips(evaluation.ids, distorted[k], backend, policy,
                             threads),
                  backend.id()));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string FormatStepStudy(const std::vector<StepStudyRow>& rows) {
  std::ostringstream out;
  out << "step,family,params,fad\n";
  for (const StepStudyRow& r : rows) {
    out << CsvLine({FormatDouble(r.step), r.family, r.params,
                    FormatDouble(r.fad)});
  }
  return out.str();
}

}  // namespace fadtk
