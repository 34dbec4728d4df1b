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

#ifndef MFOPT_BNB_HPP_
#define MFOPT_BNB_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "mfopt/lp.hpp"
#include "mfopt/nmdt.hpp"

namespace mfopt {

enum class MilpStatus { kOptimal, kGapLimit, kTimeLimit, kNodeLimit, kInfeasible };

const char* to_string(MilpStatus status);
std::optional<MilpStatus> parse_milp_status(std::string_view text);

struct SolveReport {
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> incumbent;
  double incumbent_objective = 0.0;
  double best_lower_bound = 0.0;
  double gap = 0.0;
  std::int64_t nodes_explored = 0;
  std::int64_t lp_iterations = 0;
  double wall_seconds = 0.0;
};

// (incumbent - bound) / max(|incumbent|, 1e-9), never negative.
double relative_gap(double incumbent, double bound);

// Receives a node relaxation and may return a full MILP point. The solver
// checks feasibility itself, so heuristics may be optimistic.
using MilpHeuristic =
    std::function<std::optional<std::vector<double>>(std::span<const double> relaxation)>;

struct MilpOptions {
  double time_limit = 600.0;
  double gap_target = 1e-4;
  double optimality_tolerance = 1e-6;
  double integrality_tolerance = 1e-6;
  // Scaled row tolerance for accepting heuristic points.
  double feasibility_tolerance = 1e-6;
  std::int64_t node_limit = -1;  // negative: unlimited
  LpOptions lp;
  std::optional<std::vector<double>> initial_incumbent;
  MilpHeuristic heuristic;
  // The heuristic runs at the root and then every this many nodes.
  int heuristic_interval = 25;
  std::ostream* progress = nullptr;
  double progress_interval = 5.0;  // seconds
};

// Best-first branch-and-bound for minimization problems.
SolveReport solve_milp(const MilpProblem& milp, const MilpOptions& options = {});

}  // namespace mfopt

#endif  // MFOPT_BNB_HPP_
