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

#ifndef MFOPT_BOUNDS_HPP_
#define MFOPT_BOUNDS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mfopt/data.hpp"
#include "mfopt/lp.hpp"
#include "mfopt/model.hpp"

namespace mfopt {

struct LinkBounds {
  double v_lo = 0.0;
  double v_hi = 0.0;
  double t_lo = 0.0;
  double t_hi = 1.0;

  friend bool operator==(const LinkBounds&, const LinkBounds&) = default;
};

// Bounds on every v[g][b'] and t[g][b'], indexed like MfoptModel::links.
struct VarBounds {
  int num_groups = 0;
  int num_bins = 0;
  std::string key;
  std::vector<LinkBounds> entries;

  const LinkBounds& at(int g, int bp) const {
    return entries[static_cast<std::size_t>(g) * num_bins + bp];
  }
  LinkBounds& at(int g, int bp) { return entries[static_cast<std::size_t>(g) * num_bins + bp]; }
};

// Min/max of v[g][b'] over the x polytope cut out by the linear rows only
// (transport, retention, window, DP, EOdds). Throws Error(kBoundsInfeasible).
std::pair<double, double> tighten_v_bounds(const MfoptModel& model, int g, int bp,
                                           const LpOptions& options = {});

// Affine form sum(terms) + constant.
struct AffineForm {
  std::vector<LinearTerm> terms;
  double constant = 0.0;
};

// Min and max of numerator(y) / denominator(y) over the feasible set of
// `feasible` (its objective is ignored), given that the denominator stays in
// [den_lo, den_hi] with den_lo > 0 there. Solved as two LPs after the
// Charnes-Cooper substitution xi = y * phi, phi = 1 / denominator(y).
// Throws Error(kBoundsInfeasible) naming `what` when the set is empty.
std::pair<double, double> linear_fractional_range(const LpProblem& feasible,
                                                  const AffineForm& numerator,
                                                  const AffineForm& denominator, double den_lo,
                                                  double den_hi, const std::string& what,
                                                  const LpOptions& options = {});

// Min/max of t[g][b'] = rhs(x) / v(x) over the same polytope, solved as two
// linear-fractional range. Falls back to [0, 1] when v_lo <= 0.
std::pair<double, double> tighten_t_bounds(const MfoptModel& model, int g, int bp,
                                           double v_lo, double v_hi,
                                           const LpOptions& options = {});

// Loose bounds that hold without solving anything.
VarBounds naive_bounds(const MfoptModel& model);

// Runs every subproblem, fanning out over `threads` workers (0 = hardware).
// Any infeasible subproblem makes the whole model infeasible and is rethrown
// as Error(kBoundsInfeasible) naming the offending (group, bin).
VarBounds tighten_all(const MfoptModel& model, const BinStats& stats, int threads = 1);

// Content hash of everything the bounds depend on: counts, midpoints and the
// DP/EOdds tolerances, retention and window. PRP tolerance is excluded, so
// sweeps over it can share one bounds computation.
std::string bounds_cache_key(const BinStats& stats, const Hyperparams& hyper);

}  // namespace mfopt

#endif  // MFOPT_BOUNDS_HPP_
