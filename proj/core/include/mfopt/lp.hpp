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

#ifndef MFOPT_LP_HPP_
#define MFOPT_LP_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mfopt {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense { kMinimize, kMaximize };

struct LinearTerm {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

struct LpRow {
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// Linear program over bounded variables. Every bound must be finite.
struct LpProblem {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> objective;
  std::vector<std::string> names;
  std::vector<LpRow> rows;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  double objective_offset = 0.0;

  int num_vars() const { return static_cast<int>(lower.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(double lo, double hi, double cost = 0.0, std::string name = {});
  int add_row(std::vector<LinearTerm> terms, RowSense sense, double rhs);

  // Throws Error(kInvalidArgument) on lower > upper, non-finite bounds, or a
  // term referencing an unknown variable.
  void validate() const;

  double evaluate_objective(std::span<const double> x) const;
  double row_activity(int row, std::span<const double> x) const;
  // Largest bound or row violation of `x` (absolute, unscaled).
  double max_violation(std::span<const double> x) const;
  // Same, with each row violation divided by max(1, largest |coef| in the row).
  // This is the measure the simplex feasibility tolerance applies to.
  double max_scaled_violation(std::span<const double> x) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> primal;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

struct LpOptions {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-7;
  std::int64_t iteration_limit = 200000;
};

// Bounded-variable primal simplex. The constraint matrix is scaled and
// stored once, so repeated solves under different variable bounds (as in
// branch-and-bound) only pay for the iterations.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem& problem, LpOptions options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  LpSolution solve();
  LpSolution solve(std::span<const double> lower, std::span<const double> upper);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace mfopt

#endif  // MFOPT_LP_HPP_
