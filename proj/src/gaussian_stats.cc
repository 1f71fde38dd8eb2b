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

#include "fadtk/gaussian_stats.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "binary_io.h"
#include "fadtk/csv.h"
#include "fadtk/error.h"

namespace fadtk {
namespace {

constexpr std::string_view kStatsMagic = "FADSTAT1";
constexpr double kNegativeEigenTolerance = 1e-6;

// Symmetric PSD square root; small negative eigenvalues are clamped.
Eigen::MatrixXd SqrtPsd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidStats, "eigendecomposition failed");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();
  if (values.size() > 0 && values.minCoeff() < -kNegativeEigenTolerance) {
    throw Error(ErrorCode::kInvalidStats,
                "covariance has eigenvalue " + FormatDouble(values.minCoeff()));
  }
  const Eigen::VectorXd roots = values.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace

void GaussianStats::Validate() const {
  const Eigen::Index d = mean.size();
  if (covariance.rows() != d || covariance.cols() != d) {
    throw Error(ErrorCode::kInvalidStats, "covariance shape mismatch");
  }
  if (count < 2) {
    throw Error(ErrorCode::kInvalidStats, "stats need at least 2 embeddings");
  }
  if (!mean.allFinite() || !covariance.allFinite()) {
    throw Error(ErrorCode::kInvalidStats, "non-finite statistics");
  }
  if (d > 0 && (covariance - covariance.transpose()).cwiseAbs().maxCoeff() >
                   1e-12) {
    throw Error(ErrorCode::kInvalidStats, "covariance is not symmetric");
  }
}

GaussianStats EstimateGaussian(const Eigen::MatrixXd& rows,
                               const std::string& backend_id) {
  if (rows.rows() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least 2 embeddings, got " +
                    std::to_string(rows.rows()));
  }
  GaussianStats stats;
  stats.backend_id = backend_id;
  stats.count = static_cast<uint64_t>(rows.rows());
  stats.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - stats.mean.transpose();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) /
                              static_cast<double>(rows.rows() - 1);
  stats.covariance = 0.5 * (cov + cov.transpose());
  return stats;
}

GaussianStats EstimateGaussian(const std::vector<Embedding>& embeddings,
                               const std::string& backend_id) {
  if (embeddings.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least 2 embeddings, got " +
                    std::to_string(embeddings.size()));
  }
  const auto d = static_cast<Eigen::Index>(embeddings.front().values.size());
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(embeddings.size()), d);
  for (size_t i = 0; i < embeddings.size(); ++i) {
    if (static_cast<Eigen::Index>(embeddings[i].values.size()) != d) {
      throw Error(ErrorCode::kArgument, "embeddings differ in dimension");
    }
    rows.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(embeddings[i].values.data(), d);
  }
  return EstimateGaussian(rows, backend_id);
}

double FrechetDistance(const GaussianStats& a, const GaussianStats& b) {
  if (a.dimension() != b.dimension() ||
      a.covariance.rows() != a.dimension() ||
      b.covariance.rows() != b.dimension()) {
    throw Error(ErrorCode::kArgument, "stats have different dimensions");
  }
  const Eigen::MatrixXd root_a = SqrtPsd(a.covariance);
  SqrtPsd(b.covariance);  // validates b
  Eigen::MatrixXd middle = root_a * b.covariance * root_a;
  middle = 0.5 * (middle + middle.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(middle,
                                                     Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidStats, "eigendecomposition failed");
  }
  const double trace_sqrt = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  const double mean_term = (a.mean - b.mean).squaredNorm();
  const double value = mean_term + a.covariance.trace() +
                       b.covariance.trace() - 2.0 * trace_sqrt;
  return std::max(0.0, value);
}

double FadScore(const GaussianStats& background,
                const GaussianStats& evaluation) {
  if (background.backend_id != evaluation.backend_id) {
    throw Error(ErrorCode::kIncompatibleStats,
                "background stats from '" + background.backend_id +
                    "' but evaluation stats from '" + evaluation.backend_id +
                    "'");
  }
  return FrechetDistance(background, evaluation);
}

std::string EncodeStats(const GaussianStats& stats) {
  stats.Validate();
  internal::ByteWriter w;
  w.Raw(kStatsMagic);
  const auto d = static_cast<uint32_t>(stats.dimension());
  w.U32(d);
  w.U64(stats.count);
  w.String16(stats.backend_id);
  for (Eigen::Index i = 0; i < stats.mean.size(); ++i) w.F64(stats.mean(i));
  for (Eigen::Index r = 0; r < stats.covariance.rows(); ++r) {
    for (Eigen::Index c = 0; c < stats.covariance.cols(); ++c) {
      w.F64(stats.covariance(r, c));
    }
  }
  return w.bytes();
}

GaussianStats DecodeStats(std::string_view bytes) {
  internal::ByteReader r(bytes);
  if (r.remaining() < kStatsMagic.size() ||
      r.Raw(kStatsMagic.size()) != kStatsMagic) {
    throw Error(ErrorCode::kFormat, "not a stats file");
  }
  const auto d = static_cast<Eigen::Index>(r.U32());
  GaussianStats stats;
  stats.count = r.U64();
  stats.backend_id = r.String16();
  if (r.remaining() != static_cast<size_t>(d + d * d) * 8) {
    throw Error(ErrorCode::kFormat, "stats payload size does not match header");
  }
  stats.mean.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) stats.mean(i) = r.F64();
  stats.covariance.resize(d, d);
  for (Eigen::Index row = 0; row < d; ++row) {
    for (Eigen::Index c = 0; c < d; ++c) stats.covariance(row, c) = r.F64();
  }
  stats.Validate();
  return stats;
}

void SaveStats(const GaussianStats& stats, const std::filesystem::path& path) {
  WriteFile(path, EncodeStats(stats));
}

GaussianStats LoadStats(const std::filesystem::path& path) {
  return DecodeStats(ReadFile(path));
}

}  // namespace fadtk
