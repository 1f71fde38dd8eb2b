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

#ifndef FADTK_RANKING_H_
#define FADTK_RANKING_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fadtk {

enum class Outcome { kAWins, kBWins, kTie };

struct PairwiseComparison {
  std::string item_a;
  std::string item_b;
  Outcome outcome = Outcome::kTie;
};

enum class FitStatus {
  kConverged,
  kMaxIterations,
  // The win graph is not strongly connected; each component was fitted and
  // anchored separately, so worths are only comparable within a component.
  kPartial,
};

struct WorthVector {
  // Log-worth per condition; the maximum (per component) is exactly 0.
  std::map<std::string, double> log_worth;
  FitStatus status = FitStatus::kConverged;
  int iterations = 0;
  std::vector<std::vector<std::string>> components;
};

// Bradley-Terry (pairwise Plackett-Luce) maximum likelihood by
// minorization-maximization. A tie counts as half a win for each side.
// Iterates until the largest log-worth change is below `tol`.
WorthVector FitPlackettLuce(const std::vector<PairwiseComparison>& comparisons,
                            int max_iters = 10000, double tol = 1e-8);

// Log-likelihood of the comparisons under the given log-worths.
double BradleyTerryLogLikelihood(
    const std::vector<PairwiseComparison>& comparisons,
    const std::map<std::string, double>& log_worth);

// CSV `item_a,item_b,outcome` with outcome in {a, b, tie}.
std::vector<PairwiseComparison> ParseComparisons(std::string_view text);
std::vector<PairwiseComparison> LoadComparisons(
    const std::filesystem::path& path);

double Pearson(std::span<const double> x, std::span<const double> y);
// Pearson correlation of fractional (tie-averaged) ranks.
double Spearman(std::span<const double> x, std::span<const double> y);
// 1-based ranks; tied values share the average of their positions.
std::vector<double> FractionalRanks(std::span<const double> values);

// Listening-test results published with the distortion study: one row per
// human-evaluated configuration.
struct Table2Row {
  std::string distortion;
  std::string parameters;
  double worth;
  double fad;
  double sdr;
};

const std::vector<Table2Row>& Table2Fixture();
// CSV with header `distortion,parameters,worth,fad,sdr`.
std::string Table2Csv();

}  // namespace fadtk

#endif  // FADTK_RANKING_H_
