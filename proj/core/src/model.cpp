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

#include "mfopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfopt/error.hpp"

namespace mfopt {

void Hyperparams::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (bins < 2) fail("bins must be at least 2");
  if (!(eps_dp >= 0.0) || !(eps_eodds >= 0.0) || !(eps_prp >= 0.0)) {
    fail("fairness tolerances must be nonnegative");
  }
  if (!(retention > 0.0 && retention <= 1.0)) fail("retention must lie in (0, 1]");
  if (window < 1) fail("window must be at least 1");
  if (precision > -1) fail("precision exponent must be a negative integer");
  if (!(time_limit > 0.0)) fail("time limit must be positive");
  if (!(gap_target >= 0.0)) fail("gap target must be nonnegative");
}

int precision_exponent(double tolerance) {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "precision tolerance must lie in (0, 1)");
  }
  int p = -1;
  while (std::exp2(p) > tolerance) --p;
  return p;
}

const char* to_string(RowKind kind) {
  switch (kind) {
    case RowKind::kTransport: return "transport";
    case RowKind::kDemographicParity: return "dp";
    case RowKind::kEqualOddsPositive: return "eodds_pos";
    case RowKind::kEqualOddsNegative: return "eodds_neg";
    case RowKind::kFlowDefinition: return "flow";
    case RowKind::kPredictiveParity: return "prp";
    case RowKind::kRankOrder: return "rank";
  }
  return "unknown";
}

int MfoptModel::num_x_vars() const {
  int count = 0;
  for (int id : x_index) count += id >= 0 ? 1 : 0;
  return count;
}

int MfoptModel::count_rows(RowKind kind) const {
  int count = 0;
  for (RowKind k : row_kinds) count += k == kind ? 1 : 0;
  return count;
}

int MfoptModel::add_row(RowKind kind, std::vector<LinearTerm> terms, RowSense sense,
                        double rhs) {
  row_kinds.push_back(kind);
  return lp.add_row(std::move(terms), sense, rhs);
}

double movement_coefficient(const BinStats& stats, int g, int b, int bp) {
  return stats.count[g][b] / stats.total() *
         std::abs(stats.midpoints[b] - stats.midpoints[bp]);
}

double movement_cost(const BinStats& stats,
                     const std::vector<std::vector<std::vector<double>>>& plan) {
  double sum = 0.0;
  for (int g = 0; g < stats.num_groups; ++g) {
    for (int b = 0; b < stats.num_bins; ++b) {
      for (int bp = 0; bp < stats.num_bins; ++bp) {
        sum += movement_coefficient(stats, g, b, bp) * plan[g][b][bp];
      }
    }
  }
  return sum;
}

void build_transport_constraints(MfoptModel& model, const BinStats& stats) {
  const int G = model.num_groups;
  const int B = model.num_bins;
  const double floor = 1.0 - model.hyper.retention;
  model.x_index.assign(static_cast<std::size_t>(G) * B * B, -1);
  for (int g = 0; g < G; ++g) {
    for (int b = 0; b < B; ++b) {
      for (int bp = 0; bp < B; ++bp) {
        if (std::abs(b - bp) >= model.hyper.window) continue;
        const double lo = b == bp ? floor : 0.0;
        const double hi = b == bp ? 1.0 : model.hyper.retention;
        model.x_index[(static_cast<std::size_t>(g) * B + b) * B + bp] = model.lp.add_variable(
            lo, std::max(lo, hi), 0.0,
            "x_" + stats.group_names[g] + "_" + std::to_string(b) + "_" + std::to_string(bp));
      }
    }
  }
  for (int g = 0; g < G; ++g) {
    for (int b = 0; b < B; ++b) {
      std::vector<LinearTerm> terms;
      for (int bp = 0; bp < B; ++bp) {
        const int id = model.x_var(g, b, bp);
        if (id >= 0) terms.push_back({id, 1.0});
      }
      model.add_row(RowKind::kTransport, std::move(terms), RowSense::kEqual, 1.0);
    }
  }
}

void build_objective(MfoptModel& model, const BinStats& stats) {
  for (int g = 0; g < model.num_groups; ++g) {
    for (int b = 0; b < model.num_bins; ++b) {
      for (int bp = 0; bp < model.num_bins; ++bp) {
        const int id = model.x_var(g, b, bp);
        if (id >= 0) model.lp.objective[id] = movement_coefficient(stats, g, b, bp);
      }
    }
  }
}

namespace {

// Two rows  -eps <= sum_b x1[b][b'] w1[b] - sum_b x2[b][b'] w2[b] <= eps
// for every destination b'.
void add_difference_rows(MfoptModel& model, RowKind kind, int g1, int g2,
                         const std::vector<double>& w1, const std::vector<double>& w2,
                         double eps) {
  const int B = model.num_bins;
  for (int bp = 0; bp < B; ++bp) {
    std::vector<LinearTerm> terms;
    for (int b = 0; b < B; ++b) {
      const int id1 = model.x_var(g1, b, bp);
      if (id1 >= 0 && w1[b] != 0.0) terms.push_back({id1, w1[b]});
    }
    for (int b = 0; b < B; ++b) {
      const int id2 = model.x_var(g2, b, bp);
      if (id2 >= 0 && w2[b] != 0.0) terms.push_back({id2, -w2[b]});
    }
    model.add_row(kind, terms, RowSense::kLessEqual, eps);
    model.add_row(kind, std::move(terms), RowSense::kGreaterEqual, -eps);
  }
}

std::vector<double> normalized(const std::vector<double>& v, double total,
                               const std::string& what) {
  if (!(total > 0.0)) throw Error(ErrorCode::kModel, what);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / total;
  return out;
}

}  // namespace

void build_dp_constraints(MfoptModel& model, const BinStats& stats, int g1, int g2) {
  auto w1 = normalized(stats.count[g1], stats.group_total(g1),
                       "group " + stats.group_names[g1] + " has no observations");
  auto w2 = normalized(stats.count[g2], stats.group_total(g2),
                       "group " + stats.group_names[g2] + " has no observations");
  add_difference_rows(model, RowKind::kDemographicParity, g1, g2, w1, w2, model.hyper.eps_dp);
}

void build_eodds_constraints(MfoptModel& model, const BinStats& stats, int g1, int g2) {
  auto negatives = [&](int g) {
    std::vector<double> v(stats.num_bins);
    for (int b = 0; b < stats.num_bins; ++b) v[b] = stats.negatives(g, b);
    return v;
  };
  auto name = [&](int g) { return "group " + stats.group_names[g]; };
  auto p1 = normalized(stats.positives[g1], stats.group_positives(g1), name(g1) + " has no positives");
  auto p2 = normalized(stats.positives[g2], stats.group_positives(g2), name(g2) + " has no positives");
  auto n1 = normalized(negatives(g1), stats.group_negatives(g1), name(g1) + " has no negatives");
  auto n2 = normalized(negatives(g2), stats.group_negatives(g2), name(g2) + " has no negatives");
  add_difference_rows(model, RowKind::kEqualOddsPositive, g1, g2, p1, p2, model.hyper.eps_eodds);
  add_difference_rows(model, RowKind::kEqualOddsNegative, g1, g2, n1, n2, model.hyper.eps_eodds);
}

void build_prp_variables(MfoptModel& model, const BinStats& stats) {
  const int G = model.num_groups;
  const int B = model.num_bins;
  const double floor = 1.0 - model.hyper.retention;
  model.v_index.assign(static_cast<std::size_t>(G) * B, -1);
  model.t_index.assign(static_cast<std::size_t>(G) * B, -1);
  for (int g = 0; g < G; ++g) {
    for (int bp = 0; bp < B; ++bp) {
      model.v_index[static_cast<std::size_t>(g) * B + bp] = model.lp.add_variable(
          floor * stats.count[g][bp], stats.group_total(g), 0.0,
          "v_" + stats.group_names[g] + "_" + std::to_string(bp));
    }
  }
  for (int g = 0; g < G; ++g) {
    for (int bp = 0; bp < B; ++bp) {
      model.t_index[static_cast<std::size_t>(g) * B + bp] = model.lp.add_variable(
          0.0, 1.0, 0.0, "t_" + stats.group_names[g] + "_" + std::to_string(bp));
    }
  }
  for (int g = 0; g < G; ++g) {
    for (int bp = 0; bp < B; ++bp) {
      std::vector<LinearTerm> flow{{model.v_var(g, bp), 1.0}};
      BilinearLink link;
      link.group = g;
      link.bin = bp;
      link.t_var = model.t_var(g, bp);
      link.v_var = model.v_var(g, bp);
      for (int b = 0; b < B; ++b) {
        const int id = model.x_var(g, b, bp);
        if (id < 0) continue;
        if (stats.count[g][b] != 0.0) {
          flow.push_back({id, -stats.count[g][b]});
          link.inflow.push_back({id, stats.count[g][b]});
        }
        if (stats.positives[g][b] != 0.0) link.rhs.push_back({id, stats.positives[g][b]});
      }
      model.add_row(RowKind::kFlowDefinition, std::move(flow), RowSense::kEqual, 0.0);
      model.links.push_back(std::move(link));
    }
  }
}

void build_prp_constraints(MfoptModel& model, int g1, int g2) {
  const double eps = model.hyper.eps_prp;
  for (int bp = 0; bp < model.num_bins; ++bp) {
    std::vector<LinearTerm> terms{{model.t_var(g1, bp), 1.0}, {model.t_var(g2, bp), -1.0}};
    model.add_row(RowKind::kPredictiveParity, terms, RowSense::kLessEqual, eps);
    model.add_row(RowKind::kPredictiveParity, std::move(terms), RowSense::kGreaterEqual, -eps);
  }
}

void build_rank_constraints(MfoptModel& model) {
  for (int g = 0; g < model.num_groups; ++g) {
    for (int bp = 0; bp + 1 < model.num_bins; ++bp) {
      model.add_row(RowKind::kRankOrder,
                    {{model.t_var(g, bp), 1.0}, {model.t_var(g, bp + 1), -1.0}},
                    RowSense::kLessEqual, 0.0);
    }
  }
}

void build_prp_system(MfoptModel& model, const BinStats& stats) {
  const auto overlap = validate_overlap(stats);
  if (!overlap.ok) throw Error(ErrorCode::kOverlap, overlap.describe(stats));
  build_prp_variables(model, stats);
  pairwise_expand(model.num_groups, [&](int g1, int g2) { build_prp_constraints(model, g1, g2); });
  build_rank_constraints(model);
}

void pairwise_expand(int num_groups, const std::function<void(int, int)>& builder) {
  for (int g1 = 0; g1 < num_groups; ++g1) {
    for (int g2 = g1 + 1; g2 < num_groups; ++g2) builder(g1, g2);
  }
}

MfoptModel build_model(const BinStats& stats, const Hyperparams& hyper) {
  hyper.validate();
  if (stats.num_groups < 2) {
    throw Error(ErrorCode::kModel, "at least two groups are required");
  }
  const auto overlap = validate_overlap(stats);
  if (!overlap.ok) throw Error(ErrorCode::kOverlap, overlap.describe(stats));

  MfoptModel model;
  model.num_groups = stats.num_groups;
  model.num_bins = stats.num_bins;
  model.hyper = hyper;
  model.hyper.bins = stats.num_bins;
  build_transport_constraints(model, stats);
  build_objective(model, stats);
  pairwise_expand(model.num_groups, [&](int g1, int g2) {
    build_dp_constraints(model, stats, g1, g2);
    build_eodds_constraints(model, stats, g1, g2);
  });
  build_prp_system(model, stats);
  return model;
}

}  // namespace mfopt
