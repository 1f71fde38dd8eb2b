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

#include "fadtk/embedding.h"

#include <algorithm>
#include <cmath>

#include "binary_io.h"
#include "fadtk/csv.h"
#include "fadtk/error.h"
#include "fadtk/parallel.h"

namespace fadtk {
namespace {

constexpr std::string_view kEmbeddingsMagic = "FADEMB01";
constexpr double kStartTolerance = 1e-6;

}  // namespace

void WindowingPolicy::Validate() const {
  if (!(window_seconds > 0) || !(step_seconds > 0) ||
      step_seconds > window_seconds) {
    throw Error(ErrorCode::kArgument,
                "windowing requires 0 < step <= window");
  }
}

size_t WindowingPolicy::NumWindows(size_t length, int sample_rate) const {
  return WindowStarts(length, sample_rate).size();
}

std::vector<size_t> WindowingPolicy::WindowStarts(size_t length,
                                                  int sample_rate) const {
  Validate();
  const auto window =
      static_cast<size_t>(std::llround(window_seconds * sample_rate));
  const auto step = std::max<size_t>(
      1, static_cast<size_t>(std::llround(step_seconds * sample_rate)));
  std::vector<size_t> starts;
  if (length < window || window == 0) return starts;
  for (size_t s = 0; s + window <= length; s += step) starts.push_back(s);
  return starts;
}

std::vector<LogMelPatch> ExtractWindows(const AudioClip& clip,
                                        const WindowingPolicy& policy,
                                        const LogMelFrontend& frontend) {
  const FrontendConfig& cfg = frontend.config();
  if (clip.sample_rate != cfg.sample_rate) {
    throw Error(ErrorCode::kArgument,
                "clip sample rate does not match the frontend");
  }
  const auto starts = policy.WindowStarts(clip.size(), clip.sample_rate);
  if (starts.empty()) {
    throw Error(ErrorCode::kInsufficientInput,
                "clip is shorter than one analysis window");
  }
  const auto window = static_cast<size_t>(
      std::llround(policy.window_seconds * clip.sample_rate));
  std::vector<LogMelPatch> patches;
  patches.reserve(starts.size());
  for (size_t start : starts) {
    const Eigen::MatrixXd frames = frontend.Compute(
        std::span<const double>(clip.samples).subspan(start, window));
    if (frames.rows() < cfg.patch_frames) {
      throw Error(ErrorCode::kInsufficientInput,
                  "window yields fewer frames than one patch");
    }
    patches.push_back(LogMelPatch{frames.topRows(cfg.patch_frames),
                                  static_cast<double>(start) / clip.sample_rate});
  }
  return patches;
}

PatchStatsBackend::PatchStatsBackend(const FrontendConfig& config)
    : frontend_(config) {}

std::vector<double> PatchStatsBackend::Embed(const LogMelPatch& patch) const {
  const Eigen::Index bands = patch.values.cols();
  const auto frames = static_cast<double>(patch.values.rows());
  std::vector<double> out(static_cast<size_t>(2 * bands));
  for (Eigen::Index b = 0; b < bands; ++b) {
    const auto column = patch.values.col(b);
    const double mean = column.sum() / frames;
    const double var = (column.array() - mean).square().sum() / frames;
    out[static_cast<size_t>(b)] = mean;
    out[static_cast<size_t>(bands + b)] = std::sqrt(var);
  }
  return out;
}

std::vector<Embedding> PatchStatsBackend::EmbedClip(
    const std::string& clip_id, const AudioClip& clip,
    const WindowingPolicy& policy) const {
  std::vector<Embedding> out;
  for (const auto& patch : ExtractWindows(clip, policy, frontend_)) {
    out.push_back(Embedding{Embed(patch), clip_id, patch.start_time});
  }
  return out;
}

std::string EncodeEmbeddings(const EmbeddingSet& set) {
  internal::ByteWriter w;
  w.Raw(kEmbeddingsMagic);
  w.U32(static_cast<uint32_t>(set.dimension));
  w.U32(static_cast<uint32_t>(set.entries.size()));
  for (const auto& e : set.entries) {
    if (static_cast<int>(e.values.size()) != set.dimension) {
      throw Error(ErrorCode::kArgument, "embedding dimension mismatch");
    }
    w.String16(e.clip_id);
    w.F64(e.window_start);
    for (double v : e.values) w.F32(static_cast<float>(v));
  }
  return w.bytes();
}

EmbeddingSet DecodeEmbeddings(std::string_view bytes) {
  internal::ByteReader r(bytes);
  if (r.remaining() < kEmbeddingsMagic.size() ||
      r.Raw(kEmbeddingsMagic.size()) != kEmbeddingsMagic) {
    throw Error(ErrorCode::kFormat, "not an embeddings file");
  }
  EmbeddingSet set;
  set.dimension = static_cast<int>(r.U32());
  const uint32_t count = r.U32();
  for (uint32_t i = 0; i < count; ++i) {
    Embedding e;
    e.clip_id = r.String16();
    e.window_start = r.F64();
    e.values.resize(static_cast<size_t>(set.dimension));
    for (double& v : e.values) {
      v = r.F32();
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kFormat, "non-finite embedding value");
      }
    }
    set.entries.push_back(std::move(e));
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kFormat,
                "embeddings file has trailing bytes (dimension mismatch?)");
  }
  return set;
}

void SaveEmbeddings(const EmbeddingSet& set,
                    const std::filesystem::path& path) {
  WriteFile(path, EncodeEmbeddings(set));
}

EmbeddingSet LoadEmbeddings(const std::filesystem::path& path) {
  return DecodeEmbeddings(ReadFile(path));
}

FileBackend::FileBackend(EmbeddingSet set, std::string id)
    : id_(std::move(id)),
      dimension_(set.dimension),
      entries_(std::move(set.entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (static_cast<int>(entries_[i].values.size()) != dimension_) {
      throw Error(ErrorCode::kFormat, "embedding dimension mismatch");
    }
    index_[entries_[i].clip_id].push_back(i);
  }
  for (auto& [clip, indices] : index_) {
    std::stable_sort(indices.begin(), indices.end(), [&](size_t a, size_t b) {
      return entries_[a].window_start < entries_[b].window_start;
    });
  }
}

std::unique_ptr<FileBackend> FileBackend::Open(
    const std::filesystem::path& path, std::string id) {
  return std::make_unique<FileBackend>(LoadEmbeddings(path), std::move(id));
}

const Embedding& FileBackend::Lookup(const std::string& clip_id,
                                     double window_start) const {
  const auto it = index_.find(clip_id);
  if (it != index_.end()) {
    for (size_t i : it->second) {
      if (std::abs(entries_[i].window_start - window_start) <=
          kStartTolerance) {
        return entries_[i];
      }
    }
  }
  throw Error(ErrorCode::kLookup, "no stored embedding for " + clip_id +
                                      " at " + FormatDouble(window_start) +
                                      " s");
}

std::vector<Embedding> FileBackend::ForClip(const std::string& clip_id) const {
  std::vector<Embedding> out;
  const auto it = index_.find(clip_id);
  if (it == index_.end()) return out;
  for (size_t i : it->second) out.push_back(entries_[i]);
  return out;
}

std::vector<Embedding> FileBackend::EmbedClip(
    const std::string& clip_id, const AudioClip& clip,
    const WindowingPolicy& policy) const {
  const auto starts = policy.WindowStarts(clip.size(), clip.sample_rate);
  if (starts.empty()) {
    throw Error(ErrorCode::kInsufficientInput,
                "clip is shorter than one analysis window");
  }
  std::vector<Embedding> out;
  for (size_t s : starts) {
    out.push_back(
        Lookup(clip_id, static_cast<double>(s) / clip.sample_rate));
  }
  return out;
}

std::unique_ptr<EmbeddingBackend> MakeBackend(const std::string& name,
                                              const FrontendConfig& frontend) {
  if (name == "patch-stats") {
    return std::make_unique<PatchStatsBackend>(frontend);
  }
  if (name.rfind("file:", 0) == 0) {
    return FileBackend::Open(name.substr(5));
  }
  throw Error(ErrorCode::kArgument, "unknown backend '" + name +
                                        "' (expected patch-stats or file:<path>)");
}

CorpusEmbeddings EmbedCorpus(const std::vector<ManifestEntry>& entries,
                             const EmbeddingBackend& backend,
                             const WindowingPolicy& policy, int threads) {
  policy.Validate();
  std::vector<ManifestEntry> sorted = entries;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) {
                     return a.clip_id < b.clip_id;
                   });
  std::vector<std::vector<Embedding>> per_clip(sorted.size());
  std::vector<std::string> errors(sorted.size());
  ParallelFor(sorted.size(), threads, [&](size_t i) {
    try {
      per_clip[i] = backend.EmbedClip(sorted[i].clip_id,
                                      LoadCanonical(sorted[i].path), policy);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  CorpusEmbeddings result;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (!errors[i].empty()) {
      result.failures.emplace_back(sorted[i].clip_id, errors[i]);
      continue;
    }
    for (auto& e : per_clip[i]) result.embeddings.push_back(std::move(e));
  }
  return result;
}

}  // namespace fadtk
