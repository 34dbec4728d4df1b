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

#ifndef MFOPT_MODEL_HPP_
#define MFOPT_MODEL_HPP_

#include <functional>
#include <vector>

#include "mfopt/data.hpp"
#include "mfopt/lp.hpp"

namespace mfopt {

// Solver hyperparameters. Defaults are the reference experiment settings:
// 50 bins, tolerance 0.03, retention 0.5, window 13, 600 s, precision 1e-5.
struct Hyperparams {
  int bins = 50;
  double eps_dp = 0.03;
  double eps_eodds = 0.03;
  double eps_prp = 0.03;
  // Largest share of a bin's mass allowed to leave it: x[b][b] >= 1 - retention.
  double retention = 0.5;
  // Movement allowed iff |b - b'| <= window - 1.
  int window = 13;
  // Binary expansion precision 2^precision; always negative.
  int precision = -17;
  double time_limit = 600.0;
  double gap_target = 1e-4;

  void validate() const;
};

// Smallest |p| with 2^p <= tolerance, returned as the negative exponent p.
int precision_exponent(double tolerance);

enum class RowKind {
  kTransport,
  kDemographicParity,
  kEqualOddsPositive,
  kEqualOddsNegative,
  kFlowDefinition,  // v = sum_b x[b][b'] n[b]
  kPredictiveParity,
  kRankOrder,
};

const char* to_string(RowKind kind);

// t * v = sum(rhs); rhs is linear in the x variables. `inflow` repeats the
// flow-definition terms (v = sum(inflow)) for the bound subproblems.
struct BilinearLink {
  int group = 0;
  int bin = 0;
  int t_var = 0;
  int v_var = 0;
  std::vector<LinearTerm> rhs;
  std::vector<LinearTerm> inflow;
};

// The assembled optimization model: an LP over x, v, t holding every linear
// row, plus one bilinear link per (group, destination bin). Variable ids are
// stable: x first (group-major, then source, then destination), then v, then t.
struct MfoptModel {
  int num_groups = 0;
  int num_bins = 0;
  Hyperparams hyper;
  LpProblem lp;
  std::vector<RowKind> row_kinds;
  std::vector<BilinearLink> links;
  std::vector<int> x_index;  // [g][b][b'] flattened; -1 outside the window
  std::vector<int> v_index;  // [g][b']
  std::vector<int> t_index;  // [g][b']

  int x_var(int g, int b, int bp) const {
    return x_index[(static_cast<std::size_t>(g) * num_bins + b) * num_bins + bp];
  }
  int v_var(int g, int bp) const { return v_index[static_cast<std::size_t>(g) * num_bins + bp]; }
  int t_var(int g, int bp) const { return t_index[static_cast<std::size_t>(g) * num_bins + bp]; }
  int num_x_vars() const;
  int count_rows(RowKind kind) const;

  int add_row(RowKind kind, std::vector<LinearTerm> terms, RowSense sense, double rhs);
};

// Objective coefficient of x[g][b][b']: (n[g][b]/N) |mid[b] - mid[b']|.
double movement_coefficient(const BinStats& stats, int g, int b, int bp);

// Objective value of a full plan given as [g][b][b'] probabilities.
double movement_cost(const BinStats& stats,
                     const std::vector<std::vector<std::vector<double>>>& plan);

// Individual assembly steps. build_transport_constraints creates the x
// variables and must run first; build_prp_system creates v and t.
void build_transport_constraints(MfoptModel& model, const BinStats& stats);
void build_objective(MfoptModel& model, const BinStats& stats);
void build_dp_constraints(MfoptModel& model, const BinStats& stats, int g1, int g2);
void build_eodds_constraints(MfoptModel& model, const BinStats& stats, int g1, int g2);
void build_prp_variables(MfoptModel& model, const BinStats& stats);
void build_prp_constraints(MfoptModel& model, int g1, int g2);
void build_rank_constraints(MfoptModel& model);
// v/t variables, flow definitions, bilinear links, pairwise PRP rows and
// rank-order rows. Requires overlap.
void build_prp_system(MfoptModel& model, const BinStats& stats);

// Calls `builder(g1, g2)` for every unordered pair g1 < g2.
void pairwise_expand(int num_groups, const std::function<void(int, int)>& builder);

// Full assembly. Throws Error(kOverlap) when some (bin, group) cell is empty
// and Error(kModel) for degenerate inputs such as a group with no positives.
MfoptModel build_model(const BinStats& stats, const Hyperparams& hyper);

}  // namespace mfopt

#endif  // MFOPT_MODEL_HPP_
