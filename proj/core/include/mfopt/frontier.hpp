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

#ifndef MFOPT_FRONTIER_HPP_
#define MFOPT_FRONTIER_HPP_

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfopt/bnb.hpp"
#include "mfopt/data.hpp"
#include "mfopt/model.hpp"
#include "mfopt/pipeline.hpp"

namespace mfopt {

enum class Axis { kAuc, kDp, kEOdds, kPrp };

const char* to_string(Axis axis);
std::optional<Axis> parse_axis(std::string_view text);

// One solve outcome. Coordinates are the violations realized by the plan
// under expected assignment; `configured` keeps the grid triple.
struct FrontierPoint {
  double auc = 0.0;
  double eps_dp = 0.0;
  double eps_eodds = 0.0;
  double eps_prp = 0.0;
  std::array<double, 3> configured{};
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_metrics = false;
  double gap = 0.0;
  double seconds = 0.0;
  bool nondominated = false;

  double value(Axis axis) const;
};

// True when `a` is at least as good as `b` on every axis and strictly
// better on one. Higher AUC and lower violations are better.
bool dominates(const FrontierPoint& a, const FrontierPoint& b);

struct GridSpec {
  std::vector<double> eps_dp;
  std::vector<double> eps_eodds;
  std::vector<double> eps_prp;

  std::size_t size() const { return eps_dp.size() * eps_eodds.size() * eps_prp.size(); }
};

struct SweepOptions {
  SolveOptions solve;
  int threads = 1;  // concurrent grid points
};

// One solve per grid triple, in (dp, eodds, prp) row-major order. Bounds are
// computed once per (dp, eodds) pair. `nondominated` flags are filled in.
std::vector<FrontierPoint> sweep(const BinStats& stats, const GridSpec& grid,
                                 const Hyperparams& hyper, const SweepOptions& options = {});

// Points with metrics that no other point dominates; of several identical
// points one survives. Sorted by AUC descending, then violations ascending.
std::vector<FrontierPoint> non_dominated(std::span<const FrontierPoint> points);

// Frontier point that improves `benefit` strictly, worsens `cost` strictly
// and is no worse than `operating` on the other two axes. Picks the best
// benefit, then the smallest loss on `cost`.
std::optional<FrontierPoint> tradeoff_query(std::span<const FrontierPoint> frontier,
                                            const FrontierPoint& operating, Axis cost,
                                            Axis benefit);

struct FrontierSummary {
  std::optional<double> distance;
  std::optional<FrontierPoint> point;
};

struct ModelComparison {
  double auc_min = 0.0;
  FrontierSummary a;
  FrontierSummary b;
  std::string winner;  // "A", "B", "tie" or "none"
};

// Smallest Euclidean norm of the violation triple among points with
// auc >= auc_min, per model; the smaller distance wins.
ModelComparison compare_models(std::span<const FrontierPoint> a, std::span<const FrontierPoint> b,
                               double auc_min);

// CSV with columns auc, eps_dp, eps_eodds, eps_prp, configured_dp,
// configured_eodds, configured_prp, status, gap, seconds, nondominated.
// Points without metrics leave the first four columns empty.
void write_frontier_csv(std::ostream& out, std::span<const FrontierPoint> points,
                        bool omit_timing = false);
std::vector<FrontierPoint> read_frontier_csv(std::istream& in);

}  // namespace mfopt

#endif  // MFOPT_FRONTIER_HPP_
