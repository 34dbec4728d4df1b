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

#include "mfopt/frontier.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "mfopt/error.hpp"
#include "mfopt/postprocess.hpp"

namespace mfopt {

const char* to_string(Axis axis) {
  switch (axis) {
    case Axis::kAuc: return "auc";
    case Axis::kDp: return "dp";
    case Axis::kEOdds: return "eodds";
    case Axis::kPrp: return "prp";
  }
  return "unknown";
}

std::optional<Axis> parse_axis(std::string_view text) {
  for (Axis a : {Axis::kAuc, Axis::kDp, Axis::kEOdds, Axis::kPrp}) {
    if (text == to_string(a)) return a;
  }
  return std::nullopt;
}

double FrontierPoint::value(Axis axis) const {
  switch (axis) {
    case Axis::kAuc: return auc;
    case Axis::kDp: return eps_dp;
    case Axis::kEOdds: return eps_eodds;
    case Axis::kPrp: return eps_prp;
  }
  return 0.0;
}

namespace {

constexpr std::array<Axis, 4> kAxes{Axis::kAuc, Axis::kDp, Axis::kEOdds, Axis::kPrp};

// Orients every axis so that larger is better.
double utility(const FrontierPoint& p, Axis axis) {
  return axis == Axis::kAuc ? p.auc : -p.value(axis);
}

bool frontier_order(const FrontierPoint& a, const FrontierPoint& b) {
  return std::make_tuple(-a.auc, a.eps_dp, a.eps_eodds, a.eps_prp) <
         std::make_tuple(-b.auc, b.eps_dp, b.eps_eodds, b.eps_prp);
}

bool same_metrics(const FrontierPoint& a, const FrontierPoint& b) {
  return a.auc == b.auc && a.eps_dp == b.eps_dp && a.eps_eodds == b.eps_eodds &&
         a.eps_prp == b.eps_prp;
}

}  // namespace

bool dominates(const FrontierPoint& a, const FrontierPoint& b) {
  bool strict = false;
  for (Axis axis : kAxes) {
    const double ua = utility(a, axis);
    const double ub = utility(b, axis);
    if (ua < ub) return false;
    strict = strict || ua > ub;
  }
  return strict;
}

std::vector<FrontierPoint> non_dominated(std::span<const FrontierPoint> points) {
  std::vector<FrontierPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].has_metrics) continue;
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (i == j || !points[j].has_metrics) continue;
      if (dominates(points[j], points[i])) keep = false;
      // Of identical points only the first survives.
      if (j < i && same_metrics(points[j], points[i])) keep = false;
    }
    if (keep) {
      out.push_back(points[i]);
      out.back().nondominated = true;
    }
  }
  std::stable_sort(out.begin(), out.end(), frontier_order);
  return out;
}

std::optional<FrontierPoint> tradeoff_query(std::span<const FrontierPoint> frontier,
                                            const FrontierPoint& operating, Axis cost,
                                            Axis benefit) {
  if (cost == benefit) {
    throw Error(ErrorCode::kInvalidArgument, "cost and benefit axes must differ");
  }
  std::vector<FrontierPoint> ordered(frontier.begin(), frontier.end());
  std::stable_sort(ordered.begin(), ordered.end(), frontier_order);
  std::optional<FrontierPoint> best;
  for (const FrontierPoint& p : ordered) {
    if (!p.has_metrics) continue;
    bool ok = utility(p, benefit) > utility(operating, benefit) &&
              utility(p, cost) < utility(operating, cost);
    for (Axis axis : kAxes) {
      if (axis == cost || axis == benefit) continue;
      ok = ok && utility(p, axis) >= utility(operating, axis);
    }
    if (!ok) continue;
    if (!best || utility(p, benefit) > utility(*best, benefit) ||
        (utility(p, benefit) == utility(*best, benefit) && utility(p, cost) > utility(*best, cost))) {
      best = p;
    }
  }
  return best;
}

ModelComparison compare_models(std::span<const FrontierPoint> a, std::span<const FrontierPoint> b,
                               double auc_min) {
  auto summarize = [auc_min](std::span<const FrontierPoint> points) {
    std::vector<FrontierPoint> ordered(points.begin(), points.end());
    std::stable_sort(ordered.begin(), ordered.end(), frontier_order);
    FrontierSummary s;
    for (const FrontierPoint& p : ordered) {
      if (!p.has_metrics || p.auc < auc_min) continue;
      const double d = std::hypot(p.eps_dp, p.eps_eodds, p.eps_prp);
      if (!s.distance || d < *s.distance) {
        s.distance = d;
        s.point = p;
      }
    }
    return s;
  };
  ModelComparison out;
  out.auc_min = auc_min;
  out.a = summarize(a);
  out.b = summarize(b);
  if (!out.a.distance && !out.b.distance) {
    out.winner = "none";
  } else if (!out.b.distance || (out.a.distance && *out.a.distance < *out.b.distance)) {
    out.winner = "A";
  } else if (!out.a.distance || *out.b.distance < *out.a.distance) {
    out.winner = "B";
  } else {
    out.winner = "tie";
  }
  return out;
}

std::vector<FrontierPoint> sweep(const BinStats& stats, const GridSpec& grid,
                                 const Hyperparams& hyper, const SweepOptions& options) {
  if (grid.size() == 0) throw Error(ErrorCode::kInvalidArgument, "the tolerance grid is empty");
  struct Task {
    std::size_t index;
    double dp, eodds, prp;
  };
  std::vector<Task> tasks;
  for (double dp : grid.eps_dp) {
    for (double eo : grid.eps_eodds) {
      for (double prp : grid.eps_prp) tasks.push_back({tasks.size(), dp, eo, prp});
    }
  }
  // Bounds depend on (dp, eodds) but not prp; compute each pair once.
  std::map<std::pair<double, double>, std::optional<VarBounds>> bounds;
  for (const Task& t : tasks) {
    auto [it, fresh] = bounds.try_emplace({t.dp, t.eodds});
    if (!fresh) continue;
    Hyperparams h = hyper;
    h.eps_dp = t.dp;
    h.eps_eodds = t.eodds;
    h.eps_prp = t.prp;
    const MfoptModel model = build_model(stats, h);
    try {
      it->second = tighten_all(model, stats, options.solve.threads);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBoundsInfeasible) throw;
    }
  }

  std::vector<FrontierPoint> points(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      FrontierPoint& p = points[t.index];
      p.configured = {t.dp, t.eodds, t.prp};
      try {
        const auto& cached = bounds.at({t.dp, t.eodds});
        if (!cached) {
          p.status = MilpStatus::kInfeasible;
          continue;
        }
        Hyperparams h = hyper;
        h.eps_dp = t.dp;
        h.eps_eodds = t.eodds;
        h.eps_prp = t.prp;
        SolveOptions so = options.solve;
        so.bounds = cached;
        so.progress = nullptr;
        const SolveOutcome outcome = solve_fair_plan(stats, h, so);
        p.status = outcome.report.status;
        p.gap = outcome.report.has_incumbent ? outcome.report.gap : 0.0;
        p.seconds = outcome.report.wall_seconds;
        if (outcome.plan) {
          const BinStats moved = expected_assignment_stats(*outcome.plan, stats);
          const FairnessViolations v = fairness_violations(moved);
          p.eps_dp = v.dp;
          p.eps_eodds = v.eodds;
          p.eps_prp = v.prp;
          p.auc = auc_from_bins(moved);
          p.has_metrics = true;
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(options.threads > 0 ? options.threads : 1, 1,
                                 static_cast<int>(tasks.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  const std::vector<FrontierPoint> front = non_dominated(points);
  for (FrontierPoint& p : points) {
    p.nondominated = false;
    if (!p.has_metrics) continue;
    for (const FrontierPoint& q : front) {
      if (q.configured == p.configured && same_metrics(p, q)) p.nondominated = true;
    }
  }
  return points;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, int line) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kSchema, "frontier line " + std::to_string(line) +
                                        ": cannot parse number '" + text + "'");
  }
  return v;
}

constexpr std::array<const char*, 11> kColumns{
    "auc",           "eps_dp",         "eps_eodds", "eps_prp", "configured_dp",
    "configured_eodds", "configured_prp", "status",    "gap",     "seconds",
    "nondominated"};

}  // namespace

void write_frontier_csv(std::ostream& out, std::span<const FrontierPoint> points,
                        bool omit_timing) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const FrontierPoint& p : points) {
    if (p.has_metrics) {
      out << format_double(p.auc) << ',' << format_double(p.eps_dp) << ','
          << format_double(p.eps_eodds) << ',' << format_double(p.eps_prp);
    } else {
      out << ",,,";
    }
    out << ',' << format_double(p.configured[0]) << ',' << format_double(p.configured[1]) << ','
        << format_double(p.configured[2]) << ',' << to_string(p.status) << ','
        << format_double(p.gap) << ',' << format_double(omit_timing ? 0.0 : p.seconds) << ','
        << (p.nondominated ? 1 : 0) << '\n';
  }
}

std::vector<FrontierPoint> read_frontier_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kSchema, "frontier file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* required : {"auc", "eps_dp", "eps_eodds", "eps_prp"}) {
    if (!col.count(required)) {
      throw Error(ErrorCode::kSchema, std::string("frontier file lacks column '") + required + "'");
    }
  }
  auto cell = [&](const std::vector<std::string>& row, const char* name) -> std::string {
    auto it = col.find(name);
    return it == col.end() || it->second >= row.size() ? std::string() : row[it->second];
  };
  std::vector<FrontierPoint> points;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> row = split(line);
    FrontierPoint p;
    const std::string auc = cell(row, "auc");
    p.has_metrics = !auc.empty();
    if (p.has_metrics) {
      p.auc = parse_number(auc, number);
      p.eps_dp = parse_number(cell(row, "eps_dp"), number);
      p.eps_eodds = parse_number(cell(row, "eps_eodds"), number);
      p.eps_prp = parse_number(cell(row, "eps_prp"), number);
    }
    const char* configured[] = {"configured_dp", "configured_eodds", "configured_prp"};
    for (int k = 0; k < 3; ++k) {
      const std::string c = cell(row, configured[k]);
      p.configured[k] = c.empty() ? 0.0 : parse_number(c, number);
    }
    const std::string status = cell(row, "status");
    if (status.empty()) {
      p.status = p.has_metrics ? MilpStatus::kOptimal : MilpStatus::kInfeasible;
    } else if (auto s = parse_milp_status(status)) {
      p.status = *s;
    } else {
      throw Error(ErrorCode::kSchema, "frontier line " + std::to_string(number) +
                                          ": unknown status '" + status + "'");
    }
    const std::string gap = cell(row, "gap");
    p.gap = gap.empty() ? 0.0 : parse_number(gap, number);
    const std::string seconds = cell(row, "seconds");
    p.seconds = seconds.empty() ? 0.0 : parse_number(seconds, number);
    p.nondominated = cell(row, "nondominated") == "1";
    points.push_back(p);
  }
  return points;
}

}  // namespace mfopt
