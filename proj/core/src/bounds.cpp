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

#include "mfopt/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "mfopt/error.hpp"

namespace mfopt {
namespace {

constexpr double kWiden = 1e-9;

bool is_linear_kind(RowKind kind) {
  return kind == RowKind::kTransport || kind == RowKind::kDemographicParity ||
         kind == RowKind::kEqualOddsPositive || kind == RowKind::kEqualOddsNegative;
}

// x variables occupy ids [0, num_x) in the model, so a subproblem over x can
// reuse ids and rows unchanged.
int count_x(const MfoptModel& model) {
  int hi = -1;
  for (int id : model.x_index) hi = std::max(hi, id);
  return hi + 1;
}

LpProblem x_subproblem(const MfoptModel& model) {
  LpProblem lp;
  const int nx = count_x(model);
  for (int j = 0; j < nx; ++j) {
    lp.add_variable(model.lp.lower[j], model.lp.upper[j], 0.0, model.lp.names[j]);
  }
  for (int i = 0; i < model.lp.num_rows(); ++i) {
    if (!is_linear_kind(model.row_kinds[i])) continue;
    const LpRow& row = model.lp.rows[i];
    lp.add_row(row.terms, row.sense, row.rhs);
  }
  return lp;
}

std::string cell_name(int g, int bp) {
  return "(group " + std::to_string(g) + ", bin " + std::to_string(bp) + ")";
}

double solve_extreme(LpProblem& lp, ObjectiveSense sense, const LpOptions& options,
                     const std::string& what) {
  lp.sense = sense;
  const LpSolution sol = solve_lp(lp, options);
  if (sol.status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kBoundsInfeasible,
                "bound subproblem for " + what + " is infeasible; the model has no feasible plan");
  }
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kBoundsInfeasible,
                "bound subproblem for " + what + " ended with status " + to_string(sol.status));
  }
  return sol.objective;
}

}  // namespace

std::pair<double, double> tighten_v_bounds(const MfoptModel& model, int g, int bp,
                                           const LpOptions& options) {
  const BilinearLink& link = model.links[static_cast<std::size_t>(g) * model.num_bins + bp];
  LpProblem lp = x_subproblem(model);
  for (const LinearTerm& term : link.inflow) lp.objective[term.var] = term.coef;
  const std::string what = "v" + cell_name(g, bp);
  const double lo = solve_extreme(lp, ObjectiveSense::kMinimize, options, what);
  const double hi = solve_extreme(lp, ObjectiveSense::kMaximize, options, what);
  return {std::min(lo, hi), std::max(lo, hi)};
}

std::pair<double, double> linear_fractional_range(const LpProblem& feasible,
                                                  const AffineForm& numerator,
                                                  const AffineForm& denominator, double den_lo,
                                                  double den_hi, const std::string& what,
                                                  const LpOptions& options) {
  if (!(den_lo > 0.0) || !(den_hi >= den_lo)) {
    throw Error(ErrorCode::kInvalidArgument, "denominator range must be positive for " + what);
  }
  const double phi_lo = 1.0 / den_hi;
  const double phi_hi = 1.0 / den_lo;
  const int n = feasible.num_vars();

  // xi_j = y_j * phi keeps the ids of y; phi comes last.
  LpProblem lp;
  for (int j = 0; j < n; ++j) {
    const double lo = feasible.lower[j];
    const double hi = feasible.upper[j];
    lp.add_variable(std::min(lo * phi_lo, lo * phi_hi), std::max(hi * phi_lo, hi * phi_hi), 0.0,
                    "xi_" + feasible.names[j]);
  }
  const int phi = lp.add_variable(phi_lo, phi_hi, 0.0, "phi");

  // a.y (sense) rhs  becomes  a.xi - rhs*phi (sense) 0.
  for (const LpRow& row : feasible.rows) {
    std::vector<LinearTerm> terms = row.terms;
    if (row.rhs != 0.0) terms.push_back({phi, -row.rhs});
    lp.add_row(std::move(terms), row.sense, 0.0);
  }
  // Bounds l <= y <= u become  xi - l*phi >= 0  and  xi - u*phi <= 0.
  // The first is implied by xi >= 0 when l = 0; the second when some
  // equality row with positive coefficients already caps y at u.
  std::vector<double> cap(n, std::numeric_limits<double>::infinity());
  for (const LpRow& row : feasible.rows) {
    if (row.sense != RowSense::kEqual) continue;
    bool eligible = true;
    double floor_sum = 0.0;
    for (const LinearTerm& t : row.terms) {
      eligible = eligible && t.coef > 0.0 && feasible.lower[t.var] >= 0.0;
      if (eligible) floor_sum += t.coef * feasible.lower[t.var];
    }
    if (!eligible) continue;
    for (const LinearTerm& t : row.terms) {
      const double c = (row.rhs - floor_sum + t.coef * feasible.lower[t.var]) / t.coef;
      cap[t.var] = std::min(cap[t.var], c);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (feasible.lower[j] != 0.0) {
      lp.add_row({{j, 1.0}, {phi, -feasible.lower[j]}}, RowSense::kGreaterEqual, 0.0);
    }
    if (cap[j] > feasible.upper[j]) {
      lp.add_row({{j, 1.0}, {phi, -feasible.upper[j]}}, RowSense::kLessEqual, 0.0);
    }
  }
  std::vector<LinearTerm> norm = denominator.terms;
  if (denominator.constant != 0.0) norm.push_back({phi, denominator.constant});
  lp.add_row(std::move(norm), RowSense::kEqual, 1.0);
  for (const LinearTerm& term : numerator.terms) lp.objective[term.var] += term.coef;
  lp.objective[phi] += numerator.constant;

  const double lo = solve_extreme(lp, ObjectiveSense::kMinimize, options, what);
  const double hi = solve_extreme(lp, ObjectiveSense::kMaximize, options, what);
  return {std::min(lo, hi), std::max(lo, hi)};
}

std::pair<double, double> tighten_t_bounds(const MfoptModel& model, int g, int bp,
                                           double v_lo, double v_hi,
                                           const LpOptions& options) {
  if (!(v_lo > 0.0)) return {0.0, 1.0};
  const BilinearLink& link = model.links[static_cast<std::size_t>(g) * model.num_bins + bp];
  const auto [lo, hi] = linear_fractional_range(x_subproblem(model), {link.rhs, 0.0},
                                                {link.inflow, 0.0}, v_lo, v_hi,
                                                "t" + cell_name(g, bp), options);
  return {std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)};
}

VarBounds naive_bounds(const MfoptModel& model) {
  VarBounds out;
  out.num_groups = model.num_groups;
  out.num_bins = model.num_bins;
  out.entries.resize(model.links.size());
  for (std::size_t k = 0; k < model.links.size(); ++k) {
    const BilinearLink& link = model.links[k];
    out.entries[k] = {model.lp.lower[link.v_var], model.lp.upper[link.v_var],
                      model.lp.lower[link.t_var], model.lp.upper[link.t_var]};
  }
  return out;
}

VarBounds tighten_all(const MfoptModel& model, const BinStats& stats, int threads) {
  VarBounds out = naive_bounds(model);
  out.key = bounds_cache_key(stats, model.hyper);
  const VarBounds naive = out;
  const int total = static_cast<int>(model.links.size());

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  int first_error_index = total;

  auto worker = [&] {
    for (;;) {
      const int k = next.fetch_add(1);
      if (k >= total) return;
      const BilinearLink& link = model.links[k];
      try {
        const LinkBounds& base = naive.entries[k];
        auto [vlo, vhi] = tighten_v_bounds(model, link.group, link.bin);
        vlo = std::clamp(vlo - kWiden * std::max(1.0, std::abs(vlo)), base.v_lo, base.v_hi);
        vhi = std::clamp(vhi + kWiden * std::max(1.0, std::abs(vhi)), vlo, base.v_hi);
        auto [tlo, thi] = tighten_t_bounds(model, link.group, link.bin, vlo, vhi);
        tlo = std::clamp(tlo - kWiden, base.t_lo, base.t_hi);
        thi = std::clamp(thi + kWiden, tlo, base.t_hi);
        out.entries[k] = {vlo, vhi, tlo, thi};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing index so the message is deterministic.
        if (k < first_error_index) {
          first_error_index = k;
          first_error = std::current_exception();
        }
      }
    }
  };

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

std::string bounds_cache_key(const BinStats& stats, const Hyperparams& hyper) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix_bytes = [&](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash ^= bytes[i];
      hash *= 0x100000001b3ULL;
    }
  };
  auto mix = [&](double value) { mix_bytes(&value, sizeof value); };
  mix(stats.num_groups);
  mix(stats.num_bins);
  for (double m : stats.midpoints) mix(m);
  for (int g = 0; g < stats.num_groups; ++g) {
    for (int b = 0; b < stats.num_bins; ++b) {
      mix(stats.count[g][b]);
      mix(stats.positives[g][b]);
    }
  }
  mix(hyper.eps_dp);
  mix(hyper.eps_eodds);
  mix(hyper.retention);
  mix(hyper.window);
  char buf[17] = {};
  auto res = std::to_chars(buf, buf + 16, hash, 16);
  std::string hex(buf, res.ptr);
  return std::string(16 - hex.size(), '0') + hex;
}

}  // namespace mfopt
