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

#ifndef FADTK_PIPELINE_H_
#define FADTK_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fadtk/audio_io.h"
#include "fadtk/distortion.h"
#include "fadtk/embedding.h"
#include "fadtk/gaussian_stats.h"
#include "fadtk/signal_metrics.h"

namespace fadtk {

// Canonical clips in clip_id order.
struct ClipSet {
  std::vector<std::string> ids;
  std::vector<AudioClip> clips;
  std::vector<std::pair<std::string, std::string>> failures;

  size_t size() const { return clips.size(); }
};

// Loads every entry; unreadable clips go to `failures`.
ClipSet LoadClipSet(const std::vector<ManifestEntry>& entries, int threads);

// Background clips if the manifest has any, else the evaluation clips.
std::vector<ManifestEntry> BackgroundEntries(const CorpusManifest& manifest);

// Applies `spec` to every clip with the per-clip seed.
std::vector<AudioClip> DistortClips(const ClipSet& set,
                                    const DistortionSpec& spec, int threads);

// Per-clip embeddings in clip order.
std::vector<std::vector<Embedding>> EmbedClips(
    const std::vector<std::string>& ids, const std::vector<AudioClip>& clips,
    const EmbeddingBackend& backend, const WindowingPolicy& policy,
    int threads);

// Gaussian fit over the concatenated embeddings of the selected clips (all
// when `subset` is empty).
GaussianStats StatsOf(const std::vector<std::vector<Embedding>>& per_clip,
                      const std::string& backend_id,
                      const std::vector<size_t>& subset = {});

struct SweepRecord {
  std::string clip_id;
  std::string family;
  std::string params;
  uint64_t seed = 0;
  std::string output_path;
  std::string status;  // "ok" or the error message
};

// Writes out_dir/<family>/<params>/<clip_id>.wav for every (config, clip).
// Failures are recorded per clip and do not stop the sweep.
std::vector<SweepRecord> RunSweep(const ClipSet& clips, const SweepGrid& grid,
                                  const std::filesystem::path& out_dir,
                                  int threads);
std::string FormatSweepReport(const std::vector<SweepRecord>& records);

struct PipelineOptions {
  WindowingPolicy policy;
  int filter_taps = kDefaultFilterTaps;
  int threads = 1;
  bool signal_metrics = true;
};

struct PipelineRow {
  std::string family;
  std::string params;
  double fad = 0;
  // Means over clips; +infinity SDR counted as the sentinel.
  double sdr_db = 0;
  double si_sdr_db = 0;
  double cosine_distance = 0;
  double magnitude_l2 = 0;
};

// distort -> embed -> stats -> FAD for every grid entry, plus mean signal
// metrics of each (clean, distorted) pair.
std::vector<PipelineRow> RunPipeline(const ClipSet& background,
                                     const ClipSet& evaluation,
                                     const SweepGrid& grid,
                                     const EmbeddingBackend& backend,
                                     const PipelineOptions& options);

inline constexpr const char* kPipelineHeader =
    "family,params,fad,sdr_db,si_sdr_db,cosine_distance,magnitude_l2";

std::string FormatPipelineReport(const std::vector<PipelineRow>& rows);

}  // namespace fadtk

#endif  // FADTK_PIPELINE_H_
