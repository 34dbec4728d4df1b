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

#include "mfopt/incumbent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mfopt {

struct IncumbentBuilder::Impl {
  const MfoptModel& model;
  const MilpProblem& milp;
  const BinStats& stats;
  SimplexSolver milp_solver;
  LpProblem base;  // model rows minus PRP/rank, with the MILP's bounds
  int num_model_vars;
  double tolerance = 1e-6;

  Impl(const MfoptModel& m, const MilpProblem& p, const BinStats& s)
      : model(m), milp(p), stats(s), milp_solver(p.lp), num_model_vars(m.lp.num_vars()) {
    base = m.lp;
    for (int j = 0; j < num_model_vars; ++j) {
      base.lower[j] = p.lp.lower[j];
      base.upper[j] = p.lp.upper[j];
    }
  }

  double t_lo(std::size_t k) const { return milp.lp.lower[model.links[k].t_var]; }
  double t_hi(std::size_t k) const { return milp.lp.upper[model.links[k].t_var]; }

  double objective(std::span<const double> original) const {
    return model.lp.evaluate_objective(original);
  }

  bool feasible_original(std::span<const double> original) const {
    if (model.lp.max_scaled_violation(original) > tolerance) return false;
    for (const BilinearLink& link : model.links) {
      double rhs = 0.0;
      double scale = 1.0;
      for (const LinearTerm& term : link.rhs) {
        rhs += term.coef * original[term.var];
        scale = std::max(scale, std::abs(term.coef));
      }
      if (std::abs(original[link.t_var] * original[link.v_var] - rhs) / scale > tolerance) {
        return false;
      }
    }
    return true;
  }

  std::optional<std::vector<double>> solve_fixed_t(std::span<const double> targets) {
    LpProblem lp = base;
    for (std::size_t k = 0; k < model.links.size(); ++k) {
      const BilinearLink& link = model.links[k];
      const double t = std::clamp(targets[k], t_lo(k), t_hi(k));
      lp.lower[link.t_var] = lp.upper[link.t_var] = t;
      std::vector<LinearTerm> row{{link.v_var, t}};
      for (const LinearTerm& term : link.rhs) row.push_back({term.var, -term.coef});
      lp.add_row(std::move(row), RowSense::kEqual, 0.0);
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) return std::nullopt;
    return sol.primal;
  }

  std::optional<std::vector<double>> solve_fixed_v(std::span<const double> original) {
    LpProblem lp = base;
    for (const BilinearLink& link : model.links) {
      const double v = original[link.v_var];
      lp.lower[link.v_var] = lp.upper[link.v_var] = v;
      std::vector<LinearTerm> row{{link.t_var, v}};
      for (const LinearTerm& term : link.rhs) row.push_back({term.var, -term.coef});
      lp.add_row(std::move(row), RowSense::kEqual, 0.0);
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) return std::nullopt;
    return sol.primal;
  }

  std::vector<double> refine(std::vector<double> point, int rounds) {
    double best = objective(point);
    for (int round = 0; round < rounds; ++round) {
      auto by_v = solve_fixed_v(point);
      if (!by_v || !feasible_original(*by_v)) break;
      std::vector<double> targets(model.links.size());
      for (std::size_t k = 0; k < model.links.size(); ++k) {
        targets[k] = (*by_v)[model.links[k].t_var];
      }
      auto by_t = solve_fixed_t(targets);
      std::vector<double>& next = by_t && feasible_original(*by_t) ? *by_t : *by_v;
      const double value = objective(next);
      if (value > best - 1e-12) {
        if (value < best) point = std::move(next);
        break;
      }
      best = value;
      point = std::move(next);
    }
    return point;
  }

  // Minimizes the scaled link residual sum |t v - rhs(x)| with either t
  // fixed (over x, v) or v fixed (over x, t). Returns the point and residual.
  std::optional<std::pair<std::vector<double>, double>> residual_step(
      std::span<const double> point, bool fix_t) {
    LpProblem lp = base;
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    for (const BilinearLink& link : model.links) {
      const int fixed = fix_t ? link.t_var : link.v_var;
      const int free = fix_t ? link.v_var : link.t_var;
      const double value = std::clamp(point[fixed], lp.lower[fixed], lp.upper[fixed]);
      lp.lower[fixed] = lp.upper[fixed] = value;
      double scale = 1.0;
      for (const LinearTerm& term : link.rhs) scale = std::max(scale, std::abs(term.coef));
      const double cap = 2.0 * scale * std::max(1.0, lp.upper[link.v_var]);
      const int up = lp.add_variable(0.0, cap, 1.0 / scale);
      const int down = lp.add_variable(0.0, cap, 1.0 / scale);
      std::vector<LinearTerm> row{{free, value}, {up, -1.0}, {down, 1.0}};
      for (const LinearTerm& term : link.rhs) row.push_back({term.var, -term.coef});
      lp.add_row(std::move(row), RowSense::kEqual, 0.0);
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) return std::nullopt;
    std::vector<double> out(sol.primal.begin(), sol.primal.begin() + num_model_vars);
    return std::make_pair(std::move(out), sol.objective);
  }

  // Alternating residual minimization from an arbitrary (possibly infeasible)
  // point, typically a node relaxation.
  std::optional<std::vector<double>> repair(std::span<const double> start, int rounds = 30) {
    std::vector<double> point(start.begin(), start.begin() + num_model_vars);
    double last = std::numeric_limits<double>::infinity();
    for (int round = 0; round < rounds; ++round) {
      auto step = residual_step(point, round % 2 == 0);
      if (!step) return std::nullopt;
      point = std::move(step->first);
      if (feasible_original(point)) return lift(refine(std::move(point), 4));
      if (step->second > last * (1.0 - 1e-4) && round % 2 == 1) break;
      if (round % 2 == 1) last = step->second;
    }
    return std::nullopt;
  }

  // Digits of lambda = (t - t_lo) / (t_hi - t_lo), most significant first.
  std::vector<double> direct_lift(std::span<const double> original) const {
    std::vector<double> out(milp.lp.num_vars(), 0.0);
    std::copy(original.begin(), original.begin() + num_model_vars, out.begin());
    for (const LinkLinearization& lin : milp.links) {
      const BinaryExpansion& e = lin.expansion;
      const double v = original[model.links[lin.link].v_var];
      if (e.fixed()) {
        out[e.t_var] = e.fixed_value();
        continue;
      }
      const double t = std::clamp(original[e.t_var], e.t_lo, e.t_hi);
      out[e.t_var] = t;
      const double lambda = std::clamp((t - e.t_lo) / (e.t_hi - e.t_lo), 0.0, 1.0);
      out[e.lambda_var] = lambda;
      double rest = lambda;
      for (std::size_t d = 0; d < e.z.size(); ++d) {
        const double step = std::exp2(-static_cast<int>(d) - 1);
        const double z = rest >= step ? 1.0 : 0.0;
        rest -= z * step;
        out[e.z[d]] = z;
        out[lin.w[d]] = z * v;
      }
      const double delta = std::clamp(rest, 0.0, std::exp2(e.precision));
      out[e.delta_var] = delta;
      if (lin.r_var >= 0) out[lin.r_var] = delta * v;
    }
    return out;
  }

  std::optional<std::vector<double>> lift(std::span<const double> original) {
    std::vector<double> direct = direct_lift(original);
    std::vector<double> lower = milp.lp.lower;
    std::vector<double> upper = milp.lp.upper;
    for (int id : milp.binaries) lower[id] = upper[id] = direct[id];
    const LpSolution sol = milp_solver.solve(lower, upper);
    const bool direct_ok = milp.lp.max_scaled_violation(direct) <= tolerance;
    if (sol.status == LpStatus::kOptimal && milp.lp.max_scaled_violation(sol.primal) <= tolerance) {
      if (!direct_ok || sol.objective <= milp.lp.evaluate_objective(direct)) return sol.primal;
    }
    if (direct_ok) return direct;
    return std::nullopt;
  }

  std::optional<std::vector<double>> from_targets(std::span<const double> targets) {
    auto point = solve_fixed_t(targets);
    if (point && feasible_original(*point)) {
      if (auto lifted = lift(refine(std::move(*point), 4))) return lifted;
    }
    if (milp.mode != NmdtMode::kApprox) return std::nullopt;
    // Without the remainder product the link only sees the digits, so t has
    // to sit on the expansion grid. Refinement would move it off again.
    for (int direction : {0, -1, 1}) {
      auto snapped = solve_fixed_t(snap_to_grid(targets, direction));
      if (!snapped || !feasible_original(*snapped)) continue;
      if (auto lifted = lift(*snapped)) return lifted;
    }
    return std::nullopt;
  }

  // direction 0 rounds to the nearest grid point, -1 down and 1 up.
  std::vector<double> snap_to_grid(std::span<const double> targets, int direction) const {
    std::vector<double> out(targets.begin(), targets.end());
    for (const LinkLinearization& lin : milp.links) {
      const BinaryExpansion& e = lin.expansion;
      if (e.fixed()) continue;
      const double steps = std::exp2(-e.precision);
      const double width = e.t_hi - e.t_lo;
      const double raw = std::clamp((out[lin.link] - e.t_lo) / width, 0.0, 1.0) * steps;
      double k = direction == 0 ? std::round(raw) : direction < 0 ? std::floor(raw) : std::ceil(raw);
      k = std::clamp(k, 0.0, steps - 1.0);
      out[lin.link] = e.t_lo + width * k / steps;
    }
    return out;
  }

  std::optional<std::vector<double>> identity() {
    std::vector<double> point(num_model_vars, 0.0);
    for (int g = 0; g < model.num_groups; ++g) {
      for (int b = 0; b < model.num_bins; ++b) point[model.x_var(g, b, b)] = 1.0;
    }
    for (std::size_t k = 0; k < model.links.size(); ++k) {
      const BilinearLink& link = model.links[k];
      const double n = stats.count[link.group][link.bin];
      point[link.v_var] = n;
      point[link.t_var] = n > 0.0 ? stats.positives[link.group][link.bin] / n : 0.0;
    }
    if (!feasible_original(point)) return std::nullopt;
    for (std::size_t k = 0; k < model.links.size(); ++k) {
      const double t = point[model.links[k].t_var];
      if (t < t_lo(k) - tolerance || t > t_hi(k) + tolerance) return std::nullopt;
    }
    return lift(point);
  }

  std::optional<std::vector<double>> from_volumes(std::span<const double> relaxation) {
    auto point = solve_fixed_v(relaxation);
    if (!point || !feasible_original(*point)) return std::nullopt;
    return lift(refine(std::move(*point), 4));
  }

  // Candidate targets c + kappa (rho_g - c), where rho_g is the group's own
  // positive rate and c the pooled rate pulled into the range every group's
  // t can reach. Candidates violating PRP or rank order are dropped.
  std::vector<std::vector<double>> interpolated_targets() const {
    const int G = model.num_groups;
    const int B = model.num_bins;
    std::vector<double> center(B);
    for (int b = 0; b < B; ++b) {
      double n = 0.0;
      double pos = 0.0;
      double lo = 0.0;
      double hi = 1.0;
      for (int g = 0; g < G; ++g) {
        n += stats.count[g][b];
        pos += stats.positives[g][b];
        lo = std::max(lo, t_lo(static_cast<std::size_t>(g) * B + b));
        hi = std::min(hi, t_hi(static_cast<std::size_t>(g) * B + b));
      }
      const double pooled = n > 0.0 ? pos / n : 0.0;
      center[b] = lo <= hi ? std::clamp(pooled, lo, hi) : 0.5 * (lo + hi);
    }
    std::vector<std::vector<double>> out;
    for (double kappa : {1.0, 0.75, 0.5, 0.25, 0.0}) {
      std::vector<double> t(model.links.size());
      for (int g = 0; g < G; ++g) {
        for (int b = 0; b < B; ++b) {
          const std::size_t k = static_cast<std::size_t>(g) * B + b;
          const double n = stats.count[g][b];
          const double rho = n > 0.0 ? stats.positives[g][b] / n : 0.0;
          t[k] = std::clamp(center[b] + kappa * (rho - center[b]), t_lo(k), t_hi(k));
          if (b > 0) t[k] = std::max(t[k], t[k - 1]);
        }
      }
      bool ok = true;
      for (int b = 0; b < B && ok; ++b) {
        for (int g1 = 0; g1 < G && ok; ++g1) {
          for (int g2 = g1 + 1; g2 < G && ok; ++g2) {
            ok = std::abs(t[g1 * B + b] - t[g2 * B + b]) <= model.hyper.eps_prp + 1e-12;
          }
        }
      }
      if (ok) out.push_back(std::move(t));
    }
    return out;
  }
};

IncumbentBuilder::IncumbentBuilder(const MfoptModel& model, const MilpProblem& milp,
                                   const BinStats& stats)
    : impl_(std::make_shared<Impl>(model, milp, stats)) {}
IncumbentBuilder::~IncumbentBuilder() = default;
IncumbentBuilder::IncumbentBuilder(IncumbentBuilder&&) noexcept = default;
IncumbentBuilder& IncumbentBuilder::operator=(IncumbentBuilder&&) noexcept = default;

std::optional<std::vector<double>> IncumbentBuilder::identity() { return impl_->identity(); }

std::optional<std::vector<double>> IncumbentBuilder::from_targets(std::span<const double> targets) {
  return impl_->from_targets(targets);
}

std::vector<double> IncumbentBuilder::refine(std::vector<double> original, int rounds) {
  return impl_->refine(std::move(original), rounds);
}

std::optional<std::vector<double>> IncumbentBuilder::lift(std::span<const double> original) {
  return impl_->lift(original);
}

std::optional<std::vector<double>> IncumbentBuilder::best_start() {
  std::optional<std::vector<double>> best = impl_->identity();
  double best_value = best ? impl_->milp.lp.evaluate_objective(*best)
                           : std::numeric_limits<double>::infinity();
  if (best && best_value <= 0.0) return best;
  auto candidates = impl_->interpolated_targets();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    auto point = impl_->from_targets(candidates[c]);
    if (!point) {
      std::vector<double> start(impl_->num_model_vars, 0.0);
      for (std::size_t k = 0; k < impl_->model.links.size(); ++k) {
        start[impl_->model.links[k].t_var] = candidates[c][k];
      }
      point = impl_->repair(start);
    }
    if (!point) continue;
    const double value = impl_->milp.lp.evaluate_objective(*point);
    if (value < best_value) {
      best_value = value;
      best = std::move(point);
    }
  }
  return best;
}

MilpHeuristic IncumbentBuilder::heuristic() {
  std::shared_ptr<Impl> impl = impl_;
  return [impl](std::span<const double> relaxation) -> std::optional<std::vector<double>> {
    const auto& links = impl->model.links;
    std::vector<double> targets(links.size());
    for (std::size_t k = 0; k < links.size(); ++k) targets[k] = relaxation[links[k].t_var];
    // Restore rank order, which the relaxation keeps only up to tolerance.
    const int B = impl->model.num_bins;
    for (int g = 0; g < impl->model.num_groups; ++g) {
      for (int b = 1; b < B; ++b) {
        targets[g * B + b] = std::max(targets[g * B + b], targets[g * B + b - 1]);
      }
    }
    auto by_targets = impl->from_targets(targets);
    auto by_volumes = impl->from_volumes(relaxation);
    if (by_targets && by_volumes) {
      const auto& lp = impl->milp.lp;
      return lp.evaluate_objective(*by_volumes) < lp.evaluate_objective(*by_targets) ? by_volumes
                                                                                    : by_targets;
    }
    if (!by_targets && !by_volumes) return impl->repair(relaxation);
    return by_targets ? by_targets : by_volumes;
  };
}

std::optional<std::vector<double>> initial_incumbent(const MilpProblem& milp,
                                                     const MfoptModel& model,
                                                     const BinStats& stats) {
  IncumbentBuilder builder(model, milp, stats);
  return builder.identity();
}

}  // namespace mfopt
