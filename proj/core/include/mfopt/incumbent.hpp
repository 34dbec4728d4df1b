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

#ifndef MFOPT_INCUMBENT_HPP_
#define MFOPT_INCUMBENT_HPP_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mfopt/bnb.hpp"
#include "mfopt/data.hpp"
#include "mfopt/model.hpp"
#include "mfopt/nmdt.hpp"

namespace mfopt {

// Primal heuristics that exploit the model structure. An "original point"
// holds values for the model variables (x, v, t) in model ids; the MILP keeps
// those ids, so lifting only fills in the expansion variables.
class IncumbentBuilder {
 public:
  IncumbentBuilder(const MfoptModel& model, const MilpProblem& milp, const BinStats& stats);
  ~IncumbentBuilder();
  IncumbentBuilder(IncumbentBuilder&&) noexcept;
  IncumbentBuilder& operator=(IncumbentBuilder&&) noexcept;

  // Identity plan with induced v and t, lifted into the MILP. Empty when the
  // identity violates some tolerance.
  std::optional<std::vector<double>> identity();

  // Pins every t at `targets` (indexed like model.links), which makes the
  // links linear, and solves the resulting LP over x and v.
  std::optional<std::vector<double>> from_targets(std::span<const double> targets);

  // Alternates LPs with t fixed and with v fixed; never worsens the objective.
  std::vector<double> refine(std::vector<double> original, int rounds = 4);

  // Fills in lambda, digits, remainder and products, then re-optimizes the
  // continuous variables with the digits held fixed.
  std::optional<std::vector<double>> lift(std::span<const double> original);

  // Identity, then targets interpolated between the pooled positive rate
  // and each group's own rate. Returns the best lifted point found.
  std::optional<std::vector<double>> best_start();

  // Branch-and-bound callback: targets read from the node relaxation.
  MilpHeuristic heuristic();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Identity-plan incumbent, or nothing when the identity is infeasible.
std::optional<std::vector<double>> initial_incumbent(const MilpProblem& milp,
                                                     const MfoptModel& model,
                                                     const BinStats& stats);

}  // namespace mfopt

#endif  // MFOPT_INCUMBENT_HPP_
