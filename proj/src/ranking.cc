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

#include "fadtk/ranking.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "fadtk/csv.h"
#include "fadtk/error.h"

namespace fadtk {
namespace {

// Strongly connected components of the "beat or tied with" graph, each
// sorted, in order of their smallest member.
std::vector<std::vector<size_t>> StrongComponents(
    size_t n, const std::vector<std::vector<size_t>>& edges) {
  std::vector<std::vector<size_t>> reverse(n);
  for (size_t u = 0; u < n; ++u) {
    for (size_t v : edges[u]) reverse[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<size_t> order;
  std::function<void(size_t)> visit = [&](size_t u) {
    seen[u] = true;
    for (size_t v : edges[u]) {
      if (!seen[v]) visit(v);
    }
    order.push_back(u);
  };
  for (size_t u = 0; u < n; ++u) {
    if (!seen[u]) visit(u);
  }
  std::vector<int> component(n, -1);
  std::vector<std::vector<size_t>> components;
  std::function<void(size_t, int)> assign = [&](size_t u, int c) {
    component[u] = c;
    components[static_cast<size_t>(c)].push_back(u);
    for (size_t v : reverse[u]) {
      if (component[v] < 0) assign(v, c);
    }
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (component[*it] < 0) {
      components.emplace_back();
      assign(*it, static_cast<int>(components.size() - 1));
    }
  }
  for (auto& c : components) std::sort(c.begin(), c.end());
  std::sort(components.begin(), components.end());
  return components;
}

}  // namespace

WorthVector FitPlackettLuce(const std::vector<PairwiseComparison>& comparisons,
                            int max_iters, double tol) {
  if (comparisons.empty()) {
    throw Error(ErrorCode::kNoData, "no comparisons");
  }
  std::map<std::string, size_t> ids;
  for (const auto& c : comparisons) {
    if (c.item_a == c.item_b) {
      throw Error(ErrorCode::kArgument,
                  "item compared with itself: " + c.item_a);
    }
    ids.emplace(c.item_a, 0);
    ids.emplace(c.item_b, 0);
  }
  std::vector<std::string> names;
  for (auto& [name, index] : ids) {
    index = names.size();
    names.push_back(name);
  }
  const size_t n = names.size();

  // wins[i] counts half for ties; games(i, j) counts every comparison.
  std::vector<double> wins(n, 0.0);
  std::vector<std::vector<double>> games(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<size_t>> edges(n);
  for (const auto& c : comparisons) {
    const size_t a = ids[c.item_a];
    const size_t b = ids[c.item_b];
    games[a][b] += 1;
    games[b][a] += 1;
    switch (c.outcome) {
      case Outcome::kAWins:
        wins[a] += 1;
        edges[a].push_back(b);
        break;
      case Outcome::kBWins:
        wins[b] += 1;
        edges[b].push_back(a);
        break;
      case Outcome::kTie:
        wins[a] += 0.5;
        wins[b] += 0.5;
        edges[a].push_back(b);
        edges[b].push_back(a);
        break;
    }
  }

  WorthVector result;
  const auto components = StrongComponents(n, edges);
  if (components.size() > 1) result.status = FitStatus::kPartial;
  bool all_converged = true;
  for (const auto& members : components) {
    std::vector<double> log_w(members.size(), 0.0);
    bool converged = members.size() == 1;
    int it = 0;
    for (; !converged && it < max_iters; ++it) {
      std::vector<double> next(members.size());
      for (size_t p = 0; p < members.size(); ++p) {
        double denom = 0;
        for (size_t q = 0; q < members.size(); ++q) {
          const double g = games[members[p]][members[q]];
          if (p == q || g == 0) continue;
          // n_pq / (w_p + w_q), computed relative to w_p for stability.
          denom += g / (1.0 + std::exp(log_w[q] - log_w[p]));
        }
        // w_p' = W_p / sum n_pq / (w_p + w_q)  =>  log w_p' = log W_p -
        // log(sum n_pq w_p / (w_p + w_q)) + log w_p
        next[p] = std::log(wins[members[p]]) - std::log(denom) + log_w[p];
      }
      const double top = *std::max_element(next.begin(), next.end());
      double change = 0;
      for (size_t p = 0; p < members.size(); ++p) {
        next[p] -= top;
        change = std::max(change, std::abs(next[p] - log_w[p]));
      }
      log_w = std::move(next);
      if (change < tol) converged = true;
    }
    result.iterations = std::max(result.iterations, it);
    all_converged = all_converged && converged;
    std::vector<std::string> component_names;
    for (size_t p = 0; p < members.size(); ++p) {
      result.log_worth[names[members[p]]] = log_w[p];
      component_names.push_back(names[members[p]]);
    }
    result.components.push_back(std::move(component_names));
  }
  if (!all_converged && result.status == FitStatus::kConverged) {
    result.status = FitStatus::kMaxIterations;
  }
  return result;
}

double BradleyTerryLogLikelihood(
    const std::vector<PairwiseComparison>& comparisons,
    const std::map<std::string, double>& log_worth) {
  double ll = 0;
  for (const auto& c : comparisons) {
    const double a = log_worth.at(c.item_a);
    const double b = log_worth.at(c.item_b);
    // log P(a beats b) = -log(1 + exp(b - a))
    const double log_pa = -std::log1p(std::exp(b - a));
    const double log_pb = -std::log1p(std::exp(a - b));
    switch (c.outcome) {
      case Outcome::kAWins: ll += log_pa; break;
      case Outcome::kBWins: ll += log_pb; break;
      case Outcome::kTie: ll += 0.5 * (log_pa + log_pb); break;
    }
  }
  return ll;
}

std::vector<PairwiseComparison> ParseComparisons(std::string_view text) {
  const CsvTable table = ParseCsv(text);
  std::vector<PairwiseComparison> out;
  if (table.header.empty()) return out;
  const size_t a = table.Column("item_a");
  const size_t b = table.Column("item_b");
  const size_t outcome = table.Column("outcome");
  for (const auto& row : table.rows) {
    PairwiseComparison c{row[a], row[b], Outcome::kTie};
    if (row[outcome] == "a") {
      c.outcome = Outcome::kAWins;
    } else if (row[outcome] == "b") {
      c.outcome = Outcome::kBWins;
    } else if (row[outcome] != "tie") {
      throw Error(ErrorCode::kFormat, "outcome must be a, b or tie");
    }
    if (c.item_a == c.item_b) {
      throw Error(ErrorCode::kFormat, "item compared with itself: " + c.item_a);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PairwiseComparison> LoadComparisons(
    const std::filesystem::path& path) {
  return ParseComparisons(ReadFile(path));
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kArgument, "sequences differ in length");
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kArgument, "need at least 3 points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw Error(ErrorCode::kUndefined, "correlation of a constant sequence");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> FractionalRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double rank = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double Spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kArgument, "sequences differ in length");
  }
  const auto rx = FractionalRanks(x);
  const auto ry = FractionalRanks(y);
  return Pearson(rx, ry);
}

}  // namespace fadtk
