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

#include "mfopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mfopt/error.hpp"

namespace mfopt {

int LpProblem::add_variable(double lo, double hi, double cost, std::string name) {
  lower.push_back(lo);
  upper.push_back(hi);
  objective.push_back(cost);
  names.push_back(std::move(name));
  return num_vars() - 1;
}

int LpProblem::add_row(std::vector<LinearTerm> terms, RowSense s, double rhs) {
  rows.push_back(LpRow{std::move(terms), s, rhs});
  return num_rows() - 1;
}

void LpProblem::validate() const {
  const int n = num_vars();
  if (static_cast<int>(upper.size()) != n || static_cast<int>(objective.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "variable arrays have mismatched sizes");
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "variable " + std::to_string(j) + " has a non-finite bound");
    }
    if (lower[j] > upper[j]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "variable " + std::to_string(j) + " has lower > upper");
    }
  }
  for (int i = 0; i < num_rows(); ++i) {
    for (const auto& t : rows[i].terms) {
      if (t.var < 0 || t.var >= n || !std::isfinite(t.coef)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "row " + std::to_string(i) + " references an invalid variable");
      }
    }
    if (!std::isfinite(rows[i].rhs)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " has a non-finite right-hand side");
    }
  }
}

double LpProblem::evaluate_objective(std::span<const double> x) const {
  double sum = objective_offset;
  for (int j = 0; j < num_vars(); ++j) sum += objective[j] * x[j];
  return sum;
}

double LpProblem::row_activity(int row, std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : rows[row].terms) sum += t.coef * x[t.var];
  return sum;
}

double LpProblem::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max({worst, lower[j] - x[j], x[j] - upper[j]});
  }
  for (int i = 0; i < num_rows(); ++i) {
    const double a = row_activity(i, x);
    switch (rows[i].sense) {
      case RowSense::kLessEqual: worst = std::max(worst, a - rows[i].rhs); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, rows[i].rhs - a); break;
      case RowSense::kEqual: worst = std::max(worst, std::abs(a - rows[i].rhs)); break;
    }
  }
  return worst;
}

double LpProblem::max_scaled_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max({worst, lower[j] - x[j], x[j] - upper[j]});
  }
  for (int i = 0; i < num_rows(); ++i) {
    double scale = 1.0;
    for (const auto& t : rows[i].terms) scale = std::max(scale, std::abs(t.coef));
    const double a = row_activity(i, x);
    double v = 0.0;
    switch (rows[i].sense) {
      case RowSense::kLessEqual: v = a - rows[i].rhs; break;
      case RowSense::kGreaterEqual: v = rows[i].rhs - a; break;
      case RowSense::kEqual: v = std::abs(a - rows[i].rhs); break;
    }
    worst = std::max(worst, v / scale);
  }
  return worst;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
    case LpStatus::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

namespace {

double power_of_two_scale(double magnitude) {
  if (!(magnitude > 0.0)) return 1.0;
  return std::exp2(-std::round(std::log2(magnitude)));
}

constexpr double kPivotTolerance = 1e-9;
constexpr double kDropTolerance = 1e-13;
constexpr int kRefreshInterval = 100;
constexpr int kDegenerateBeforeBland = 40;

}  // namespace

// Columns 0..n-1 are structural; column n+i is the logical of row i, defined
// by  r_i * (a_i . x) - s_i = 0  so every constraint becomes an equality and
// all variables carry finite bounds. The basis inverse is kept explicitly and
// updated in product form; it is rebuilt by Gauss-Jordan only when the
// final residual check fails.
struct SimplexSolver::Impl {
  LpProblem problem;
  LpOptions opt;
  int m = 0;
  int n = 0;

  std::vector<int> col_start, col_row;
  std::vector<double> col_val;
  std::vector<double> row_scale;
  double cost_scale = 1.0;
  std::vector<double> cost;

  std::vector<double> lo, hi, x;
  std::vector<int> head;
  std::vector<int> pos;
  std::vector<char> at_upper;
  std::vector<double> binv;

  std::vector<double> y, alpha, cb;

  Impl(const LpProblem& p, LpOptions o) : problem(p), opt(o) {
    problem.validate();
    m = problem.num_rows();
    n = problem.num_vars();
    row_scale.assign(m, 1.0);
    for (int i = 0; i < m; ++i) {
      double big = 0.0;
      for (const auto& t : problem.rows[i].terms) big = std::max(big, std::abs(t.coef));
      row_scale[i] = power_of_two_scale(big);
    }
    std::vector<std::vector<std::pair<int, double>>> cols(n);
    for (int i = 0; i < m; ++i) {
      for (const auto& t : problem.rows[i].terms) {
        if (t.coef != 0.0) cols[t.var].emplace_back(i, t.coef * row_scale[i]);
      }
    }
    col_start.assign(n + 1, 0);
    for (int j = 0; j < n; ++j) {
      auto& c = cols[j];
      std::sort(c.begin(), c.end());
      // merge duplicate row entries
      std::vector<std::pair<int, double>> merged;
      for (auto& e : c) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      for (auto& e : merged) {
        col_row.push_back(e.first);
        col_val.push_back(e.second);
      }
      col_start[j + 1] = static_cast<int>(col_row.size());
    }
    double cmax = 0.0;
    for (double c : problem.objective) cmax = std::max(cmax, std::abs(c));
    cost_scale = power_of_two_scale(cmax);
    const double sign = problem.sense == ObjectiveSense::kMinimize ? 1.0 : -1.0;
    cost.assign(n + m, 0.0);
    for (int j = 0; j < n; ++j) cost[j] = sign * problem.objective[j] * cost_scale;
  }

  double column_dot(int j, const std::vector<double>& v) const {
    if (j >= n) return -v[j - n];
    double s = 0.0;
    for (int k = col_start[j]; k < col_start[j + 1]; ++k) s += col_val[k] * v[col_row[k]];
    return s;
  }

  void setup_bounds(std::span<const double> slo, std::span<const double> shi) {
    lo.assign(n + m, 0.0);
    hi.assign(n + m, 0.0);
    for (int j = 0; j < n; ++j) {
      lo[j] = slo[j];
      hi[j] = shi[j];
    }
    std::vector<double> rmin(m, 0.0), rmax(m, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int k = col_start[j]; k < col_start[j + 1]; ++k) {
        const double a = col_val[k];
        rmin[col_row[k]] += std::min(a * lo[j], a * hi[j]);
        rmax[col_row[k]] += std::max(a * lo[j], a * hi[j]);
      }
    }
    for (int i = 0; i < m; ++i) {
      const double rhs = problem.rows[i].rhs * row_scale[i];
      switch (problem.rows[i].sense) {
        case RowSense::kLessEqual:
          lo[n + i] = std::min(rmin[i], rhs) - 1.0;
          hi[n + i] = rhs;
          break;
        case RowSense::kGreaterEqual:
          lo[n + i] = rhs;
          hi[n + i] = std::max(rmax[i], rhs) + 1.0;
          break;
        case RowSense::kEqual:
          lo[n + i] = hi[n + i] = rhs;
          break;
      }
    }
  }

  void reset_basis() {
    head.resize(m);
    pos.assign(n + m, -1);
    at_upper.assign(n + m, 0);
    x.assign(n + m, 0.0);
    for (int j = 0; j < n; ++j) x[j] = lo[j];
    for (int i = 0; i < m; ++i) {
      head[i] = n + i;
      pos[n + i] = i;
    }
    binv.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) binv[static_cast<std::size_t>(i) * m + i] = -1.0;
    recompute_basic_values();
  }

  // x_B = -B^{-1} (M_N x_N)
  void recompute_basic_values() {
    std::vector<double> q(m, 0.0);
    for (int j = 0; j < n + m; ++j) {
      if (pos[j] >= 0 || x[j] == 0.0) continue;
      if (j >= n) {
        q[j - n] -= x[j];
      } else {
        for (int k = col_start[j]; k < col_start[j + 1]; ++k) q[col_row[k]] += col_val[k] * x[j];
      }
    }
    for (int i = 0; i < m; ++i) {
      const double* row = &binv[static_cast<std::size_t>(i) * m];
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += row[k] * q[k];
      x[head[i]] = -s;
    }
  }

  // Dense Gauss-Jordan inversion of the current basis.
  bool refactor() {
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
      const int j = head[i];
      if (j >= n) {
        a[static_cast<std::size_t>(j - n) * m + i] = -1.0;
      } else {
        for (int k = col_start[j]; k < col_start[j + 1]; ++k) {
          a[static_cast<std::size_t>(col_row[k]) * m + i] = col_val[k];
        }
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i) * m + i] = 1.0;
    for (int c = 0; c < m; ++c) {
      int piv = -1;
      double best = 0.0;
      for (int r = c; r < m; ++r) {
        const double v = std::abs(a[static_cast<std::size_t>(r) * m + c]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0 || best < 1e-12) return false;
      if (piv != c) {
        std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv) * m,
                         a.begin() + static_cast<std::ptrdiff_t>(piv + 1) * m,
                         a.begin() + static_cast<std::ptrdiff_t>(c) * m);
        std::swap_ranges(inv.begin() + static_cast<std::ptrdiff_t>(piv) * m,
                         inv.begin() + static_cast<std::ptrdiff_t>(piv + 1) * m,
                         inv.begin() + static_cast<std::ptrdiff_t>(c) * m);
      }
      double* arow = &a[static_cast<std::size_t>(c) * m];
      double* irow = &inv[static_cast<std::size_t>(c) * m];
      const double d = 1.0 / arow[c];
      for (int k = 0; k < m; ++k) {
        arow[k] *= d;
        irow[k] *= d;
      }
      for (int r = 0; r < m; ++r) {
        if (r == c) continue;
        const double f = a[static_cast<std::size_t>(r) * m + c];
        if (f == 0.0) continue;
        double* ar = &a[static_cast<std::size_t>(r) * m];
        double* ir = &inv[static_cast<std::size_t>(r) * m];
        for (int k = 0; k < m; ++k) {
          ar[k] -= f * arow[k];
          ir[k] -= f * irow[k];
        }
      }
    }
    // Rows of `inv` are indexed by basis position because column i of the
    // dense matrix is the basic variable of row i.
    binv = std::move(inv);
    recompute_basic_values();
    return true;
  }

  double infeasibility(int j) const {
    if (x[j] < lo[j]) return lo[j] - x[j];
    if (x[j] > hi[j]) return x[j] - hi[j];
    return 0.0;
  }

  void compute_alpha(int q) {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    if (q >= n) {
      const int k = q - n;
      for (int i = 0; i < m; ++i) alpha[i] = -binv[static_cast<std::size_t>(i) * m + k];
      return;
    }
    for (int e = col_start[q]; e < col_start[q + 1]; ++e) {
      const int k = col_row[e];
      const double a = col_val[e];
      for (int i = 0; i < m; ++i) alpha[i] += a * binv[static_cast<std::size_t>(i) * m + k];
    }
  }

  void pivot_update(int r) {
    const std::size_t mm = static_cast<std::size_t>(m);
    double* prow = &binv[r * mm];
    const double inv_piv = 1.0 / alpha[r];
    std::vector<int> nz;
    for (int k = 0; k < m; ++k) {
      prow[k] *= inv_piv;
      if (prow[k] != 0.0) nz.push_back(k);
    }
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = alpha[i];
      if (std::abs(f) <= kDropTolerance) continue;
      double* row = &binv[i * mm];
      for (int k : nz) row[k] -= f * prow[k];
    }
  }

  LpSolution run() {
    const double ft = opt.feasibility_tolerance;
    const double ot = opt.optimality_tolerance;
    y.assign(m, 0.0);
    alpha.assign(m, 0.0);
    cb.assign(m, 0.0);

    LpSolution sol;
    std::int64_t iter = 0;
    int since_refresh = 0;
    int degenerate = 0;
    int refactors = 0;
    bool bland = false;

    while (true) {
      if (iter >= opt.iteration_limit) {
        sol.status = LpStatus::kIterationLimit;
        break;
      }
      if (since_refresh >= kRefreshInterval) {
        recompute_basic_values();
        since_refresh = 0;
      }

      bool phase1 = false;
      for (int i = 0; i < m; ++i) {
        const int b = head[i];
        if (x[b] < lo[b] - ft) {
          cb[i] = -1.0;
          phase1 = true;
        } else if (x[b] > hi[b] + ft) {
          cb[i] = 1.0;
          phase1 = true;
        } else {
          cb[i] = 0.0;
        }
      }
      if (!phase1) {
        for (int i = 0; i < m; ++i) cb[i] = cost[head[i]];
      }
      std::fill(y.begin(), y.end(), 0.0);
      for (int i = 0; i < m; ++i) {
        if (cb[i] == 0.0) continue;
        const double* row = &binv[static_cast<std::size_t>(i) * m];
        const double c = cb[i];
        for (int k = 0; k < m; ++k) y[k] += c * row[k];
      }

      int q = -1;
      double best = 0.0;
      for (int j = 0; j < n + m; ++j) {
        if (pos[j] >= 0 || lo[j] >= hi[j]) continue;
        const double d = (phase1 ? 0.0 : cost[j]) - column_dot(j, y);
        const bool eligible = at_upper[j] ? d > ot : d < -ot;
        if (!eligible) continue;
        if (bland) {
          q = j;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          q = j;
        }
      }

      if (q < 0) {
        if (phase1) {
          // Confirm with fresh basic values before declaring infeasibility.
          if (since_refresh != 0) {
            recompute_basic_values();
            since_refresh = 0;
            continue;
          }
          sol.status = LpStatus::kInfeasible;
          break;
        }
        if (finalize_check(refactors)) {
          sol.status = LpStatus::kOptimal;
          break;
        }
        since_refresh = 0;
        continue;
      }

      ++iter;
      ++since_refresh;
      compute_alpha(q);
      const double dir = at_upper[q] ? -1.0 : 1.0;

      // Harris two-pass ratio test (textbook smallest-ratio in Bland mode).
      double theta_max = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double g = dir * alpha[i];
        if (std::abs(g) < kPivotTolerance) continue;
        const int b = head[i];
        double limit;
        if (g > 0) {
          if (phase1 && x[b] > hi[b] + ft) limit = (x[b] - hi[b]) / g;
          else if (phase1 && x[b] < lo[b] - ft) continue;
          else limit = (x[b] - lo[b] + (bland ? 0.0 : ft)) / g;
        } else {
          if (phase1 && x[b] < lo[b] - ft) limit = (x[b] - lo[b]) / g;
          else if (phase1 && x[b] > hi[b] + ft) continue;
          else limit = (x[b] - hi[b] - (bland ? 0.0 : ft)) / g;
        }
        theta_max = std::min(theta_max, limit);
      }
      int r = -1;
      double theta = 0.0;
      bool leave_upper = false;
      double best_piv = 0.0;
      for (int i = 0; i < m; ++i) {
        const double g = dir * alpha[i];
        if (std::abs(g) < kPivotTolerance) continue;
        const int b = head[i];
        double ratio;
        bool to_upper;
        if (g > 0) {
          if (phase1 && x[b] > hi[b] + ft) {
            ratio = (x[b] - hi[b]) / g;
            to_upper = true;
          } else if (phase1 && x[b] < lo[b] - ft) {
            continue;
          } else {
            ratio = (x[b] - lo[b]) / g;
            to_upper = false;
          }
        } else {
          if (phase1 && x[b] < lo[b] - ft) {
            ratio = (x[b] - lo[b]) / g;
            to_upper = false;
          } else if (phase1 && x[b] > hi[b] + ft) {
            continue;
          } else {
            ratio = (x[b] - hi[b]) / g;
            to_upper = true;
          }
        }
        if (ratio > theta_max) continue;
        bool take;
        if (bland) {
          take = r < 0 || ratio < theta - 1e-15 ||
                 (ratio <= theta + 1e-15 && b < head[r]);
        } else {
          take = std::abs(g) > best_piv;
        }
        if (take) {
          r = i;
          theta = ratio;
          best_piv = std::abs(g);
          leave_upper = to_upper;
        }
      }
      theta = std::max(theta, 0.0);

      const double range = hi[q] - lo[q];
      if (r < 0 || range <= theta) {
        if (!std::isfinite(range)) {
          sol.status = LpStatus::kUnbounded;
          break;
        }
        // Bound flip: the entering variable reaches its opposite bound first.
        for (int i = 0; i < m; ++i) {
          if (alpha[i] != 0.0) x[head[i]] -= dir * range * alpha[i];
        }
        at_upper[q] = at_upper[q] ? 0 : 1;
        x[q] = at_upper[q] ? hi[q] : lo[q];
        degenerate = 0;
        bland = false;
        continue;
      }

      for (int i = 0; i < m; ++i) {
        if (alpha[i] != 0.0) x[head[i]] -= dir * theta * alpha[i];
      }
      x[q] += dir * theta;
      const int leaving = head[r];
      x[leaving] = leave_upper ? hi[leaving] : lo[leaving];
      at_upper[leaving] = leave_upper ? 1 : 0;
      pos[leaving] = -1;
      pivot_update(r);
      head[r] = q;
      pos[q] = r;
      at_upper[q] = 0;

      if (theta <= 1e-12) {
        if (++degenerate > kDegenerateBeforeBland) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
    }

    sol.iterations = iter;
    sol.primal.assign(x.begin(), x.begin() + n);
    for (int j = 0; j < n; ++j) {
      sol.primal[j] = std::clamp(sol.primal[j], lo[j], hi[j]);
    }
    sol.objective = problem.evaluate_objective(sol.primal);
    return sol;
  }

  // Optimality reached on the working values; confirm the residual of the
  // unscaled rows after a fresh recomputation, rebuilding the inverse once or
  // twice if round-off has crept in.
  bool finalize_check(int& refactors) {
    recompute_basic_values();
    const double ft = opt.feasibility_tolerance;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      const int b = head[i];
      if (x[b] < lo[b] - ft || x[b] > hi[b] + ft) ok = false;
    }
    if (ok) return true;
    if (refactors < 3) {
      ++refactors;
      refactor();
    }
    return refactors >= 3;
  }
};

SimplexSolver::SimplexSolver(const LpProblem& problem, LpOptions options)
    : impl_(std::make_unique<Impl>(problem, options)) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

LpSolution SimplexSolver::solve() {
  return solve(impl_->problem.lower, impl_->problem.upper);
}

LpSolution SimplexSolver::solve(std::span<const double> lower,
                                std::span<const double> upper) {
  auto& s = *impl_;
  if (static_cast<int>(lower.size()) != s.n || static_cast<int>(upper.size()) != s.n) {
    throw Error(ErrorCode::kInvalidArgument, "bound override has wrong size");
  }
  for (int j = 0; j < s.n; ++j) {
    if (lower[j] > upper[j] + s.opt.feasibility_tolerance) {
      LpSolution sol;
      sol.status = LpStatus::kInfeasible;
      sol.primal.assign(lower.begin(), lower.end());
      return sol;
    }
  }
  std::vector<double> lo(lower.begin(), lower.end());
  std::vector<double> hi(upper.begin(), upper.end());
  for (int j = 0; j < s.n; ++j) hi[j] = std::max(hi[j], lo[j]);
  s.setup_bounds(lo, hi);
  s.reset_basis();
  return s.run();
}

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  SimplexSolver solver(problem, options);
  return solver.solve();
}

}  // namespace mfopt
