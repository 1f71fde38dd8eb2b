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

#include "fadtk/signal_metrics.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "fadtk/error.h"
#include "fadtk/fft.h"

namespace fadtk {
namespace {

constexpr double kPerfectRatio = 1e-20;

double Energy(std::span<const double> x) {
  double e = 0;
  for (double v : x) e += v * v;
  return e;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
  return d;
}

void CheckRates(const AudioClip& reference, const AudioClip& estimate) {
  if (reference.sample_rate != estimate.sample_rate) {
    throw Error(ErrorCode::kArgument, "sample rates differ");
  }
}

double RatioDb(double target_energy, double residual_energy) {
  if (residual_energy < kPerfectRatio * target_energy) {
    return std::numeric_limits<double>::infinity();
  }
  if (target_energy == 0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(target_energy / residual_energy);
}

}  // namespace

std::vector<double> AlignLength(const std::vector<double>& estimate,
                                size_t length) {
  std::vector<double> out(length, 0.0);
  std::copy_n(estimate.begin(), std::min(length, estimate.size()), out.begin());
  return out;
}

double Sdr(const AudioClip& reference, const AudioClip& estimate,
           int filter_taps) {
  CheckRates(reference, estimate);
  if (filter_taps < 1) {
    throw Error(ErrorCode::kArgument, "filter_taps must be >= 1");
  }
  const std::vector<double>& ref = reference.samples;
  const size_t n = ref.size();
  if (n == 0 || Energy(ref) == 0) {
    throw Error(ErrorCode::kUndefined, "reference is all zeros");
  }
  const std::vector<double> est = AlignLength(estimate.samples, n);
  const auto taps = static_cast<size_t>(std::min<size_t>(filter_taps, n));

  // Gram matrix of the truncated delayed references
  //   G(j, k) = sum_{t = max(j,k)}^{n-1} ref[t - j] ref[t - k].
  // For lag d = k - j it equals the full autocorrelation minus the products
  // that fall past the end of the signal.
  const std::vector<double> acf = CrossCorrelate(ref, ref, taps);
  Eigen::MatrixXd gram(taps, taps);
  for (size_t d = 0; d < taps; ++d) {
    double missing = 0;
    for (size_t k = d; k < taps; ++k) {
      // Terms u in [n - k, n - 1 - d] of sum_u ref[u + d] ref[u] are dropped.
      if (k > d) {
        const size_t u = n - k;
        missing += ref[u + d] * ref[u];
      }
      const double value = acf[d] - missing;
      gram(static_cast<Eigen::Index>(k - d), static_cast<Eigen::Index>(k)) = value;
      gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - d)) = value;
    }
  }
  const std::vector<double> cross = CrossCorrelate(est, ref, taps);
  const Eigen::Map<const Eigen::VectorXd> rhs(cross.data(),
                                              static_cast<Eigen::Index>(taps));

  Eigen::VectorXd coeffs;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  bool solved = false;
  if (llt.info() == Eigen::Success) {
    coeffs = llt.solve(rhs);
    solved = coeffs.allFinite();
  }
  if (!solved) {
    coeffs = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(gram)
                 .solve(rhs);
  }

  std::vector<double> target =
      Convolve(ref, std::span<const double>(coeffs.data(), taps));
  target.resize(n);
  std::vector<double> residual(n);
  for (size_t i = 0; i < n; ++i) residual[i] = est[i] - target[i];
  return RatioDb(Energy(target), Energy(residual));
}

double SiSdr(const AudioClip& reference, const AudioClip& estimate) {
  CheckRates(reference, estimate);
  const std::vector<double>& ref = reference.samples;
  const double ref_energy = Energy(ref);
  if (ref.empty() || ref_energy == 0) {
    throw Error(ErrorCode::kUndefined, "reference is all zeros");
  }
  const std::vector<double> est = AlignLength(estimate.samples, ref.size());
  const double scale = Dot(est, ref) / ref_energy;
  double target_energy = 0, residual_energy = 0;
  for (size_t i = 0; i < ref.size(); ++i) {
    const double t = scale * ref[i];
    target_energy += t * t;
    residual_energy += (est[i] - t) * (est[i] - t);
  }
  return RatioDb(target_energy, residual_energy);
}

double CosineDistance(const AudioClip& reference, const AudioClip& estimate) {
  CheckRates(reference, estimate);
  const std::vector<double> est =
      AlignLength(estimate.samples, reference.size());
  const double norm_ref = std::sqrt(Energy(reference.samples));
  const double norm_est = std::sqrt(Energy(est));
  if (norm_ref == 0 || norm_est == 0) {
    throw Error(ErrorCode::kUndefined, "cosine distance of a zero signal");
  }
  const double cosine = Dot(reference.samples, est) / (norm_ref * norm_est);
  return std::clamp(1.0 - cosine, 0.0, 2.0);
}

double MagnitudeL2(const AudioClip& reference, const AudioClip& estimate,
                   const StftConfig& config) {
  CheckRates(reference, estimate);
  const AudioClip aligned{AlignLength(estimate.samples, reference.size()),
                          estimate.sample_rate};
  const Eigen::MatrixXd ref = Stft(reference, config).Magnitude();
  const Eigen::MatrixXd est = Stft(aligned, config).Magnitude();
  const double denom = ref.norm();
  if (denom == 0) {
    throw Error(ErrorCode::kUndefined, "reference spectrogram is all zeros");
  }
  return (est - ref).norm() / denom;
}

MetricReport ComputeMetrics(const std::string& clip_id,
                            const AudioClip& reference,
                            const AudioClip& estimate, int filter_taps) {
  MetricReport report;
  report.clip_id = clip_id;
  report.sdr_db = Sdr(reference, estimate, filter_taps);
  report.si_sdr_db = SiSdr(reference, estimate);
  report.cosine_distance = CosineDistance(reference, estimate);
  report.magnitude_l2 = MagnitudeL2(reference, estimate);
  return report;
}

double SdrForReport(double sdr_db) {
  if (std::isinf(sdr_db)) {
    return sdr_db > 0 ? kInfiniteSdrSentinelDb : -kInfiniteSdrSentinelDb;
  }
  return std::clamp(sdr_db, -kInfiniteSdrSentinelDb, kInfiniteSdrSentinelDb);
}

}  // namespace fadtk
