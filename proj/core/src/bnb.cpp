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

#include "mfopt/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <utility>

#include "mfopt/error.hpp"

namespace mfopt {

const char* to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return "Optimal";
    case MilpStatus::kGapLimit: return "GapLimit";
    case MilpStatus::kTimeLimit: return "TimeLimit";
    case MilpStatus::kNodeLimit: return "NodeLimit";
    case MilpStatus::kInfeasible: return "Infeasible";
  }
  return "Unknown";
}

std::optional<MilpStatus> parse_milp_status(std::string_view text) {
  for (MilpStatus s : {MilpStatus::kOptimal, MilpStatus::kGapLimit, MilpStatus::kTimeLimit,
                       MilpStatus::kNodeLimit, MilpStatus::kInfeasible}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

double relative_gap(double incumbent, double bound) {
  return std::max(0.0, incumbent - bound) / std::max(std::abs(incumbent), 1e-9);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  double bound = 0.0;
  std::uint64_t seq = 0;
  std::vector<std::pair<int, std::int8_t>> fixings;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpProblem& milp, const MilpOptions& options)
      : milp_(milp), options_(options), solver_(milp.lp, options.lp), start_(Clock::now()) {}

  SolveReport run() {
    report_.incumbent_objective = std::numeric_limits<double>::infinity();
    if (options_.initial_incumbent) offer(*options_.initial_incumbent);

    open_.push(Node{-std::numeric_limits<double>::infinity(), seq_++, {}});
    bool root = true;
    MilpStatus stop = MilpStatus::kOptimal;

    while (!open_.empty()) {
      if (elapsed() >= options_.time_limit) {
        stop = MilpStatus::kTimeLimit;
        break;
      }
      if (options_.node_limit >= 0 && report_.nodes_explored >= options_.node_limit) {
        stop = MilpStatus::kNodeLimit;
        break;
      }
      // Best-first order: once the best open bound cannot improve on the
      // incumbent, neither can any other node.
      if (report_.has_incumbent &&
          open_.top().bound >= report_.incumbent_objective - options_.optimality_tolerance) {
        open_ = {};
        break;
      }
      if (report_.has_incumbent &&
          relative_gap(report_.incumbent_objective, current_bound()) <= options_.gap_target) {
        stop = MilpStatus::kGapLimit;
        break;
      }
      Node node = open_.top();
      open_.pop();
      if (report_.has_incumbent &&
          node.bound >= report_.incumbent_objective - options_.optimality_tolerance) {
        continue;
      }
      process(std::move(node), root);
      root = false;
      maybe_progress();
    }

    if (open_.empty() && unresolved_bound_ == std::numeric_limits<double>::infinity()) {
      if (!report_.has_incumbent) {
        report_.status = MilpStatus::kInfeasible;
      } else {
        report_.status = MilpStatus::kOptimal;
        report_.best_lower_bound = report_.incumbent_objective;
      }
    } else {
      if (stop == MilpStatus::kOptimal) stop = MilpStatus::kTimeLimit;
      report_.status = stop;
      update_bound();
      if (report_.has_incumbent) {
        report_.best_lower_bound = std::min(report_.best_lower_bound, report_.incumbent_objective);
      }
    }
    if (report_.has_incumbent) {
      report_.gap = relative_gap(report_.incumbent_objective, report_.best_lower_bound);
      if (report_.status == MilpStatus::kGapLimit && open_.empty()) {
        report_.status = MilpStatus::kOptimal;
      }
    } else {
      report_.gap = std::numeric_limits<double>::infinity();
      report_.incumbent_objective = std::numeric_limits<double>::infinity();
    }
    report_.wall_seconds = elapsed();
    if (options_.progress) print_progress(true);
    return std::move(report_);
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  double current_bound() {
    update_bound();
    return bound_set_ ? report_.best_lower_bound : -std::numeric_limits<double>::infinity();
  }

  // Global bound = min over open nodes and unresolved nodes, kept monotone.
  void update_bound() {
    double b = unresolved_bound_;
    if (!open_.empty()) b = std::min(b, open_.top().bound);
    if (report_.has_incumbent) b = std::min(b, report_.incumbent_objective);
    if (b == std::numeric_limits<double>::infinity()) return;
    if (!bound_set_ || b > report_.best_lower_bound) {
      report_.best_lower_bound = b;
      bound_set_ = true;
    }
  }

  void process(Node node, bool root) {
    lower_ = milp_.lp.lower;
    upper_ = milp_.lp.upper;
    for (auto [var, value] : node.fixings) lower_[var] = upper_[var] = value;
    const LpSolution sol = solver_.solve(lower_, upper_);
    ++report_.nodes_explored;
    report_.lp_iterations += sol.iterations;

    if (sol.status == LpStatus::kInfeasible) return;
    if (sol.status != LpStatus::kOptimal) {
      // The node stays unresolved; its inherited bound remains a valid floor.
      unresolved_bound_ = std::min(unresolved_bound_, node.bound);
      return;
    }
    const double bound = std::max(node.bound, sol.objective);
    if (root) {
      report_.best_lower_bound = bound;
      bound_set_ = true;
    }
    if (options_.heuristic &&
        (root || report_.nodes_explored % std::max(1, options_.heuristic_interval) == 0)) {
      if (auto point = options_.heuristic(sol.primal)) offer(*point);
    }
    if (report_.has_incumbent && bound >= report_.incumbent_objective - options_.optimality_tolerance) {
      return;
    }

    int branch = -1;
    double best_frac = options_.integrality_tolerance;
    for (int id : milp_.binaries) {
      const double frac = std::abs(sol.primal[id] - std::round(sol.primal[id]));
      if (frac > best_frac || (frac == best_frac && branch >= 0 && id < branch)) {
        branch = id;
        best_frac = frac;
      }
    }
    if (branch < 0) {
      accept(sol.primal, sol.objective);
      return;
    }
    for (std::int8_t value : {std::int8_t{0}, std::int8_t{1}}) {
      Node child{bound, seq_++, node.fixings};
      child.fixings.emplace_back(branch, value);
      open_.push(std::move(child));
    }
  }

  void offer(const std::vector<double>& point) {
    if (point.size() != static_cast<std::size_t>(milp_.lp.num_vars())) return;
    if (milp_.max_integrality_violation(point) > options_.integrality_tolerance) return;
    if (milp_.lp.max_scaled_violation(point) > options_.feasibility_tolerance) return;
    accept(point, milp_.lp.evaluate_objective(point));
  }

  void accept(const std::vector<double>& point, double objective) {
    if (report_.has_incumbent && objective >= report_.incumbent_objective) return;
    report_.has_incumbent = true;
    report_.incumbent = point;
    report_.incumbent_objective = objective;
  }

  void maybe_progress() {
    if (!options_.progress || options_.progress_interval <= 0.0) return;
    const double now = elapsed();
    if (now - last_progress_ < options_.progress_interval) return;
    last_progress_ = now;
    print_progress(false);
  }

  void print_progress(bool final_line) {
    update_bound();
    char line[256];
    const double inc = report_.has_incumbent ? report_.incumbent_objective
                                             : std::numeric_limits<double>::infinity();
    std::snprintf(line, sizeof line,
                  "%s nodes %lld open %zu bound %.8g incumbent %.8g gap %.4g time %.1fs\n",
                  final_line ? "[bnb done]" : "[bnb]",
                  static_cast<long long>(report_.nodes_explored), open_.size(),
                  report_.best_lower_bound, inc,
                  report_.has_incumbent ? relative_gap(inc, report_.best_lower_bound)
                                        : std::numeric_limits<double>::infinity(),
                  elapsed());
    *options_.progress << line << std::flush;
  }

  const MilpProblem& milp_;
  const MilpOptions& options_;
  SimplexSolver solver_;
  Clock::time_point start_;
  SolveReport report_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::uint64_t seq_ = 0;
  double unresolved_bound_ = std::numeric_limits<double>::infinity();
  bool bound_set_ = false;
  double last_progress_ = 0.0;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace

SolveReport solve_milp(const MilpProblem& milp, const MilpOptions& options) {
  milp.validate();
  if (milp.lp.sense != ObjectiveSense::kMinimize) {
    throw Error(ErrorCode::kInvalidArgument, "solve_milp expects a minimization problem");
  }
  BranchAndBound search(milp, options);
  return search.run();
}

}  // namespace mfopt
