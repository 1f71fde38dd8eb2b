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

#ifndef FADTK_GAUSSIAN_STATS_H_
#define FADTK_GAUSSIAN_STATS_H_

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fadtk/embedding.h"

namespace fadtk {

// Multivariate Gaussian fitted to a set of embeddings.
struct GaussianStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  uint64_t count = 0;
  std::string backend_id;

  int dimension() const { return static_cast<int>(mean.size()); }
  // Shape, finiteness, symmetry (1e-12) and count >= 2.
  void Validate() const;
};

// Sample mean and unbiased (n - 1) covariance, symmetrized.
GaussianStats EstimateGaussian(const std::vector<Embedding>& embeddings,
                               const std::string& backend_id);
GaussianStats EstimateGaussian(const Eigen::MatrixXd& rows,
                               const std::string& backend_id);

// ||mu_a - mu_b||^2 + tr(S_a) + tr(S_b) - 2 tr((S_a^1/2 S_b S_a^1/2)^1/2).
// Eigenvalues down to -1e-6 are treated as zero; anything more negative is
// an invalid-stats error.
double FrechetDistance(const GaussianStats& a, const GaussianStats& b);

// Frechet distance between background and evaluation statistics; both must
// come from the same backend.
double FadScore(const GaussianStats& background,
                const GaussianStats& evaluation);

// Binary stats file ("FADSTAT1").
std::string EncodeStats(const GaussianStats& stats);
GaussianStats DecodeStats(std::string_view bytes);
void SaveStats(const GaussianStats& stats, const std::filesystem::path& path);
GaussianStats LoadStats(const std::filesystem::path& path);

}  // namespace fadtk

#endif  // FADTK_GAUSSIAN_STATS_H_
