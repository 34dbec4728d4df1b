// Copyright 2026 The mfopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "support.hpp"

#include <algorithm>
#include <cmath>

namespace mfopt::testing {

BinStats tiny_a_stats() {
  return BinStats::from_counts({{10, 10}, {10, 10}}, {{2, 8}, {4, 6}}, {0.25, 0.75});
}

std::vector<Observation> synthetic_observations(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> a1(2.0, 1.0), b1(5.0, 1.0), a0(3.0, 1.0), b0(4.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Observation> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int g = i % 2;
    const double a = g ? a1(rng) : a0(rng);
    const double b = g ? b1(rng) : b0(rng);
    const double score = a / (a + b);
    const double p = std::clamp(score + (g ? 0.1 : -0.05), 0.02, 0.98);
    out.push_back({score, unit(rng) < p ? 1 : 0, g});
  }
  return out;
}

Hyperparams synthetic_hyper() {
  Hyperparams h;
  h.bins = 10;
  h.eps_dp = h.eps_eodds = h.eps_prp = 0.05;
  h.retention = 0.5;
  h.window = 5;
  h.precision = -12;
  return h;
}

EnumerationResult enumerate_binaries(const MilpProblem& milp) {
  EnumerationResult result;
  SimplexSolver solver(milp.lp);
  std::vector<double> lo = milp.lp.lower;
  std::vector<double> hi = milp.lp.upper;
  const std::size_t k = milp.binaries.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    for (std::size_t i = 0; i < k; ++i) {
      const double v = ((mask >> i) & 1u) ? 1.0 : 0.0;
      lo[milp.binaries[i]] = hi[milp.binaries[i]] = v;
    }
    ++result.combinations;
    const LpSolution sol = solver.solve(lo, hi);
    if (sol.status != LpStatus::kOptimal) continue;
    if (!result.objective || sol.objective < *result.objective) result.objective = sol.objective;
  }
  return result;
}

BinStats random_tiny_stats(std::mt19937_64& rng, int bins) {
  std::uniform_int_distribution<int> count(4, 12);
  std::uniform_int_distribution<int> half(2, 6);
  std::vector<std::vector<double>> n(2, std::vector<double>(bins));
  std::vector<std::vector<double>> pos(2, std::vector<double>(bins));
  for (int b = 0; b < bins; ++b) {
    n[0][b] = count(rng);
    pos[0][b] = std::uniform_int_distribution<int>(1, static_cast<int>(n[0][b]) - 1)(rng);
    n[1][b] = 2.0 * half(rng);
    pos[1][b] = n[1][b] / 2.0;
  }
  return BinStats::from_counts(std::move(n), std::move(pos));
}

std::optional<std::vector<double>> sample_plan(const MfoptModel& model, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int B = model.num_bins;
  const double leave_max = model.hyper.retention;
  std::vector<double> point(model.lp.num_vars(), 0.0);
  // Most draws stay close to the identity; a few spread mass widely.
  const double spread = std::pow(unit(rng), 3.0);
  for (int g = 0; g < model.num_groups; ++g) {
    for (int b = 0; b < B; ++b) {
      std::vector<int> targets;
      for (int bp = 0; bp < B; ++bp) {
        if (bp != b && model.x_var(g, b, bp) >= 0) targets.push_back(bp);
      }
      const double leave = targets.empty() ? 0.0 : leave_max * spread * unit(rng);
      std::vector<double> share(targets.size());
      double total = 0.0;
      for (double& s : share) total += (s = -std::log(1.0 - unit(rng)));
      point[model.x_var(g, b, b)] = 1.0 - leave;
      for (std::size_t k = 0; k < targets.size(); ++k) {
        point[model.x_var(g, b, targets[k])] = total > 0.0 ? leave * share[k] / total : 0.0;
      }
    }
  }
  for (const BilinearLink& link : model.links) {
    double v = 0.0;
    for (const LinearTerm& t : link.inflow) v += t.coef * point[t.var];
    double rhs = 0.0;
    for (const LinearTerm& t : link.rhs) rhs += t.coef * point[t.var];
    point[link.v_var] = v;
    point[link.t_var] = v > 0.0 ? rhs / v : 0.0;
  }
  for (int r = 0; r < model.lp.num_rows(); ++r) {
    const RowKind kind = model.row_kinds[r];
    if (kind == RowKind::kPredictiveParity || kind == RowKind::kRankOrder) continue;
    const LpRow& row = model.lp.rows[r];
    const double a = model.lp.row_activity(r, point);
    const double tol = 1e-9;
    if (row.sense == RowSense::kLessEqual && a > row.rhs + tol) return std::nullopt;
    if (row.sense == RowSense::kGreaterEqual && a < row.rhs - tol) return std::nullopt;
    if (row.sense == RowSense::kEqual && std::abs(a - row.rhs) > 1e-7) return std::nullopt;
  }
  return point;
}

double rank_auc_oracle(const BinStats& stats, int group) {
  // (bin, label) per unit, sorted by bin; ties share the mean rank
  std::vector<std::pair<int, int>> units;
  for (int g = 0; g < stats.num_groups; ++g) {
    if (group >= 0 && g != group) continue;
    for (int b = 0; b < stats.num_bins; ++b) {
      const auto n = std::llround(stats.count[g][b]);
      const auto p = std::llround(stats.positives[g][b]);
      for (long long i = 0; i < n; ++i) units.emplace_back(b, i < p ? 1 : 0);
    }
  }
  std::sort(units.begin(), units.end());
  double rank_sum = 0.0, npos = 0.0, nneg = 0.0;
  std::size_t i = 0;
  while (i < units.size()) {
    std::size_t j = i;
    while (j < units.size() && units[j].first == units[i].first) ++j;
    const double mid = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) {
      if (units[k].second) {
        rank_sum += mid;
        npos += 1.0;
      } else {
        nneg += 1.0;
      }
    }
    i = j;
  }
  return (rank_sum - npos * (npos + 1.0) / 2.0) / (npos * nneg);
}

}  // namespace mfopt::testing
