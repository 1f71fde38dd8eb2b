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

#include "fadtk/pipeline.h"

#include <algorithm>
#include <exception>
#include <limits>
#include <sstream>
#include <tuple>

#include "fadtk/csv.h"
#include "fadtk/error.h"
#include "fadtk/parallel.h"

namespace fadtk {

ClipSet LoadClipSet(const std::vector<ManifestEntry>& entries, int threads) {
  std::vector<ManifestEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.clip_id < b.clip_id;
            });
  std::vector<AudioClip> loaded(sorted.size());
  std::vector<std::string> errors(sorted.size());
  ParallelFor(sorted.size(), threads, [&](size_t i) {
    try {
      loaded[i] = LoadCanonical(sorted[i].path);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  ClipSet set;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (!errors[i].empty()) {
      set.failures.emplace_back(sorted[i].clip_id, errors[i]);
      continue;
    }
    set.ids.push_back(sorted[i].clip_id);
    set.clips.push_back(std::move(loaded[i]));
  }
  return set;
}

std::vector<ManifestEntry> BackgroundEntries(const CorpusManifest& manifest) {
  auto background = manifest.WithRole(ClipRole::kBackground);
  if (!background.empty()) return background;
  return manifest.WithRole(ClipRole::kEvaluation);
}

std::vector<AudioClip> DistortClips(const ClipSet& set,
                                    const DistortionSpec& spec, int threads) {
  std::vector<AudioClip> out(set.size());
  ParallelFor(set.size(), threads, [&](size_t i) {
    DistortionSpec clip_spec = spec;
    clip_spec.seed = ClipSeed(spec.seed, set.ids[i]);
    out[i] = ApplyDistortion(set.clips[i], clip_spec);
  });
  return out;
}

std::vector<std::vector<Embedding>> EmbedClips(
    const std::vector<std::string>& ids, const std::vector<AudioClip>& clips,
    const EmbeddingBackend& backend, const WindowingPolicy& policy,
    int threads) {
  std::vector<std::vector<Embedding>> out(clips.size());
  ParallelFor(clips.size(), threads, [&](size_t i) {
    out[i] = backend.EmbedClip(ids[i], clips[i], policy);
  });
  return out;
}

GaussianStats StatsOf(const std::vector<std::vector<Embedding>>& per_clip,
                      const std::string& backend_id,
                      const std::vector<size_t>& subset) {
  std::vector<size_t> chosen = subset;
  if (chosen.empty()) {
    chosen.resize(per_clip.size());
    for (size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
  }
  size_t rows = 0;
  int dim = 0;
  for (size_t c : chosen) {
    rows += per_clip[c].size();
    if (!per_clip[c].empty()) {
      dim = static_cast<int>(per_clip[c].front().values.size());
    }
  }
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(rows), dim);
  Eigen::Index r = 0;
  for (size_t c : chosen) {
    for (const Embedding& e : per_clip[c]) {
      for (int j = 0; j < dim; ++j) matrix(r, j) = e.values[j];
      ++r;
    }
  }
  return EstimateGaussian(matrix, backend_id);
}

namespace {

std::string PathSafe(std::string params) {
  std::replace(params.begin(), params.end(), ';', '_');
  return params.empty() ? "default" : params;
}

}  // namespace

std::vector<SweepRecord> RunSweep(const ClipSet& clips, const SweepGrid& grid,
                                  const std::filesystem::path& out_dir,
                                  int threads) {
  const size_t n = clips.size();
  std::vector<SweepRecord> records(grid.entries.size() * n);
  ParallelFor(records.size(), threads, [&](size_t k) {
    const DistortionSpec& spec = grid.entries[k / n];
    const size_t c = k % n;
    SweepRecord& rec = records[k];
    rec.clip_id = clips.ids[c];
    rec.family = std::string(FamilyName(spec.family));
    rec.params = spec.ParamString();
    rec.seed = ClipSeed(spec.seed, rec.clip_id);
    const auto dir = out_dir / rec.family / PathSafe(rec.params);
    const auto path = dir / (rec.clip_id + ".wav");
    rec.output_path = path.string();
    try {
      DistortionSpec clip_spec = spec;
      clip_spec.seed = rec.seed;
      const AudioClip out = ApplyDistortion(clips.clips[c], clip_spec);
      std::filesystem::create_directories(dir);
      SaveWav(out, path);
      rec.status = "ok";
    } catch (const std::exception& e) {
      rec.status = e.what();
      rec.output_path.clear();
    }
  });
  std::sort(records.begin(), records.end(),
            [](const SweepRecord& a, const SweepRecord& b) {
              return std::tie(a.clip_id, a.family, a.params) <
                     std::tie(b.clip_id, b.family, b.params);
            });
  return records;
}

std::string FormatSweepReport(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << "clip_id,family,params,seed,output_path,status\n";
  for (const SweepRecord& r : records) {
    out << CsvLine({r.clip_id, r.family, r.params, std::to_string(r.seed),
                    r.output_path, r.status});
  }
  return out.str();
}

std::vector<PipelineRow> RunPipeline(const ClipSet& background,
                                     const ClipSet& evaluation,
                                     const SweepGrid& grid,
                                     const EmbeddingBackend& backend,
                                     const PipelineOptions& options) {
  options.policy.Validate();
  std::vector<PipelineRow> rows;
  if (grid.entries.empty()) return rows;
  if (evaluation.size() == 0) {
    throw Error(ErrorCode::kInsufficientData, "no evaluation clips");
  }
  const GaussianStats background_stats =
      StatsOf(EmbedClips(background.ids, background.clips, backend,
                         options.policy, options.threads),
              backend.id());
  const size_t n = evaluation.size();
  for (const DistortionSpec& spec : grid.entries) {
    const auto distorted = DistortClips(evaluation, spec, options.threads);
    const auto embeddings = EmbedClips(evaluation.ids, distorted, backend,
                                       options.policy, options.threads);
    PipelineRow row;
    row.family = std::string(FamilyName(spec.family));
    row.params = spec.ParamString();
    row.fad = FadScore(background_stats, StatsOf(embeddings, backend.id()));
    if (options.signal_metrics) {
      std::vector<MetricReport> metrics(n);
      ParallelFor(n, options.threads, [&](size_t i) {
        metrics[i] = ComputeMetrics(evaluation.ids[i], evaluation.clips[i],
                                    distorted[i], options.filter_taps);
      });
      for (const MetricReport& m : metrics) {
        row.sdr_db += SdrForReport(m.sdr_db);
        row.si_sdr_db += SdrForReport(m.si_sdr_db);
        row.cosine_distance += m.cosine_distance;
        row.magnitude_l2 += m.magnitude_l2;
      }
      const double scale = 1.0 / static_cast<double>(n);
      row.sdr_db *= scale;
      row.si_sdr_db *= scale;
      row.cosine_distance *= scale;
      row.magnitude_l2 *= scale;
    } else {
      row.sdr_db = row.si_sdr_db = row.cosine_distance = row.magnitude_l2 =
          std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatPipelineReport(const std::vector<PipelineRow>& rows) {
  std::ostringstream out;
  out << kPipelineHeader << "\n";
  for (const PipelineRow& r : rows) {
    out << CsvLine({r.family, r.params, FormatDouble(r.fad),
                    FormatDouble(r.sdr_db), FormatDouble(r.si_sdr_db),
                    FormatDouble(r.cosine_distance),
                    FormatDouble(r.magnitude_l2)});
  }
  return out.str();
}

}  // namespace fadtk
