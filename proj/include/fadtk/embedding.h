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

#ifndef FADTK_EMBEDDING_H_
#define FADTK_EMBEDDING_H_

#include <Eigen/Core>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fadtk/audio_io.h"
#include "fadtk/frontend.h"

namespace fadtk {

// 1 s analysis windows every `step_seconds`.
struct WindowingPolicy {
  double window_seconds = 1.0;
  double step_seconds = 0.5;

  void Validate() const;
  // floor((length - window) / step) + 1 in samples, 0 if too short.
  size_t NumWindows(size_t length, int sample_rate) const;
  // Start offsets in samples.
  std::vector<size_t> WindowStarts(size_t length, int sample_rate) const;
};

// patch_frames x num_bands log-mel values taken from the start of a window.
struct LogMelPatch {
  Eigen::MatrixXd values;
  double start_time = 0;
};

// Patches for every window start; each window's log-mel frames are computed
// from that window's samples only and truncated to the patch length.
std::vector<LogMelPatch> ExtractWindows(const AudioClip& clip,
                                        const WindowingPolicy& policy,
                                        const LogMelFrontend& frontend);

struct Embedding {
  std::vector<double> values;
  std::string clip_id;
  double window_start = 0;
};

class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;

  virtual std::string id() const = 0;
  virtual int dimension() const = 0;

  // Embeddings of every window of a canonical clip, ordered by start time.
  virtual std::vector<Embedding> EmbedClip(const std::string& clip_id,
                                           const AudioClip& clip,
                                           const WindowingPolicy& policy) const = 0;
};

// Deterministic stand-in for a learned model: per-band mean followed by
// per-band (population) standard deviation over the patch frames.
class PatchStatsBackend : public EmbeddingBackend {
 public:
  explicit PatchStatsBackend(const FrontendConfig& config = {});

  std::string id() const override { return "patch-stats"; }
  int dimension() const override { return 2 * frontend_.config().num_bands; }
  std::vector<Embedding> EmbedClip(const std::string& clip_id,
                                   const AudioClip& clip,
                                   const WindowingPolicy& policy) const override;

  std::vector<double> Embed(const LogMelPatch& patch) const;

 private:
  LogMelFrontend frontend_;
};

struct EmbeddingSet {
  int dimension = 0;
  std::vector<Embedding> entries;
};

// Binary embeddings file ("FADEMB01").
std::string EncodeEmbeddings(const EmbeddingSet& set);
EmbeddingSet DecodeEmbeddings(std::string_view bytes);
void SaveEmbeddings(const EmbeddingSet& set, const std::filesystem::path& path);
EmbeddingSet LoadEmbeddings(const std::filesystem::path& path);

// Serves precomputed embeddings (e.g. from a pretrained network) keyed by
// (clip_id, window_start), bypassing audio analysis.
class FileBackend : public EmbeddingBackend {
 public:
  explicit FileBackend(EmbeddingSet set, std::string id = "file");
  static std::unique_ptr<FileBackend> Open(const std::filesystem::path& path,
                                           std::string id = "file");

  std::string id() const override { return id_; }
  int dimension() const override { return dimension_; }
  std::vector<Embedding> EmbedClip(const std::string& clip_id,
                                   const AudioClip& clip,
                                   const WindowingPolicy& policy) const override;

  const Embedding& Lookup(const std::string& clip_id,
                          double window_start) const;
  std::vector<Embedding> ForClip(const std::string& clip_id) const;
  size_t size() const { return entries_.size(); }

 private:
  std::string id_;
  int dimension_;
  std::vector<Embedding> entries_;
  // clip_id -> indices sorted by window_start
  std::map<std::string, std::vector<size_t>> index_;
};

// "patch-stats" or "file:<path>".
std::unique_ptr<EmbeddingBackend> MakeBackend(
    const std::string& name, const FrontendConfig& frontend = {});

struct CorpusEmbeddings {
  std::vector<Embedding> embeddings;
  // (clip_id, message) for clips that could not be read.
  std::vector<std::pair<std::string, std::string>> failures;
};

// Embeds every entry, skipping unreadable clips. Output is ordered by
// (clip_id, window_start) regardless of the number of threads.
CorpusEmbeddings EmbedCorpus(const std::vector<ManifestEntry>& entries,
                             const EmbeddingBackend& backend,
                             const WindowingPolicy& policy, int threads = 1);

}  // namespace fadtk

#endif  // FADTK_EMBEDDING_H_
