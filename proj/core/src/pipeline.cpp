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

#include "mfopt/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "mfopt/error.hpp"
#include "mfopt/incumbent.hpp"

namespace mfopt {

SolveOutcome solve_fair_plan(const BinStats& stats, const Hyperparams& hyper,
                             const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out;
  out.model = build_model(stats, hyper);
  const std::string key = bounds_cache_key(stats, hyper);
  if (options.bounds && options.bounds->key == key) {
    out.bounds = *options.bounds;
  } else {
    try {
      out.bounds = tighten_all(out.model, stats, options.threads);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBoundsInfeasible) throw;
      out.bounds = naive_bounds(out.model);
      out.bounds.key = key;
      out.report.status = MilpStatus::kInfeasible;
      out.report.incumbent_objective = std::numeric_limits<double>::infinity();
      out.report.best_lower_bound = std::numeric_limits<double>::infinity();
      out.report.gap = std::numeric_limits<double>::infinity();
      out.bounds_infeasibility = e.what();
      if (options.progress) *options.progress << "[bounds] " << e.what() << '\n';
      return out;
    }
  }
  out.milp = linearize_links(out.model, out.bounds, hyper.precision, options.mode);

  MilpOptions milp_options;
  milp_options.gap_target = hyper.gap_target;
  milp_options.node_limit = options.node_limit;
  milp_options.progress = options.progress;
  milp_options.progress_interval = options.progress_interval;

  IncumbentBuilder builder(out.model, out.milp, stats);
  if (options.heuristics) {
    milp_options.initial_incumbent = builder.best_start();
    milp_options.heuristic = builder.heuristic();
  } else {
    milp_options.initial_incumbent = builder.identity();
  }
  const double setup =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  milp_options.time_limit = std::max(0.0, hyper.time_limit - setup);
  out.report = solve_milp(out.milp, milp_options);
  out.report.wall_seconds += setup;
  if (out.report.has_incumbent) out.plan = extract_plan(out.report.incumbent, out.model, stats);
  return out;
}

}  // namespace mfopt
