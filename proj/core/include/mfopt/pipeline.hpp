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

#ifndef MFOPT_PIPELINE_HPP_
#define MFOPT_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "mfopt/bnb.hpp"
#include "mfopt/bounds.hpp"
#include "mfopt/data.hpp"
#include "mfopt/model.hpp"
#include "mfopt/nmdt.hpp"
#include "mfopt/postprocess.hpp"

namespace mfopt {

struct SolveOptions {
  NmdtMode mode = NmdtMode::kExact;
  int threads = 1;  // bound tightening workers
  std::int64_t node_limit = -1;
  bool heuristics = true;
  std::ostream* progress = nullptr;
  double progress_interval = 5.0;
  // Reused instead of recomputed when its key matches.
  std::optional<VarBounds> bounds;
};

struct SolveOutcome {
  MfoptModel model;
  VarBounds bounds;
  MilpProblem milp;
  SolveReport report;
  std::optional<TransitionPlan> plan;  // set whenever an incumbent exists
  // Message of the bound subproblem that proved infeasibility, if any.
  std::string bounds_infeasibility;
};

// Model assembly, bound tightening, linearization, incumbent seeding and
// branch-and-bound. Infeasible bound subproblems surface as an Infeasible
// report rather than an exception.
SolveOutcome solve_fair_plan(const BinStats& stats, const Hyperparams& hyper,
                             const SolveOptions& options = {});

}  // namespace mfopt

#endif  // MFOPT_PIPELINE_HPP_
