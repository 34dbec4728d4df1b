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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mfopt/bnb.hpp"
#include "mfopt/bounds.hpp"
#include "mfopt/data.hpp"
#include "mfopt/error.hpp"
#include "mfopt/frontier.hpp"
#include "mfopt/nmdt.hpp"
#include "mfopt/pipeline.hpp"
#include "mfopt/postprocess.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace mfopt;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Solve reports collected for the gap-accounting criterion.
struct ReportRecord {
  SolveReport report;
  bool oracle_verified = false;
};
std::vector<ReportRecord> g_reports;

// ---------------------------------------------------------------------------
// 1. Oracle optimality

Verdict oracle_optimality() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  const double eps_choices[] = {0.05, 0.1, 0.2};
  int matched = 0, attempted = 0, feasible = 0;
  double worst = 0.0;
  std::size_t most_binaries = 0;
  for (int draw = 0; feasible < 24 && draw < 200; ++draw) {
    const int bins = 2 + draw % 2;
    const BinStats stats = testing::random_tiny_stats(rng, bins);
    Hyperparams h;
    h.eps_dp = eps_choices[rng() % 3];
    h.eps_eodds = eps_choices[rng() % 3];
    h.eps_prp = eps_choices[rng() % 3];
    h.retention = 0.5;
    h.window = bins;
    h.precision = -4;
    h.gap_target = 0.0;
    h.time_limit = 30.0;
    SolveOptions so;
    so.mode = draw % 4 < 2 ? NmdtMode::kExact : NmdtMode::kApprox;
    const SolveOutcome out = solve_fair_plan(stats, h, so);
    if (!out.bounds_infeasibility.empty()) continue;
    ++attempted;
    most_binaries = std::max(most_binaries, out.milp.binaries.size());
    if (out.milp.binaries.size() > 12) continue;
    const testing::EnumerationResult oracle = testing::enumerate_binaries(out.milp);
    if (!oracle.objective) {
      if (out.report.status == MilpStatus::kInfeasible) ++matched;
      continue;
    }
    ++feasible;
    g_reports.push_back({out.report, true});
    if (out.report.status != MilpStatus::kOptimal) continue;
    const double diff = std::abs(out.report.incumbent_objective - *oracle.objective);
    worst = std::max(worst, diff);
    if (diff <= 1e-6) ++matched;
  }
  const double elapsed = seconds_since(start);
  const bool pass = feasible >= 20 && matched == attempted && most_binaries <= 12 && elapsed < 60;
  return {pass, fmt("%d/%d instances match enumeration (%d with a feasible optimum), max |diff| "
                    "%.2e, at most %zu binaries, %.1fs",
                    matched, attempted, feasible, worst, most_binaries, elapsed)};
}

// ---------------------------------------------------------------------------
// Synthetic fixture shared by criteria 2, 3, 5 and 6.

struct SyntheticRun {
  BinStats stats;
  Hyperparams hyper;
  SolveOutcome outcome;
  double seconds = 0.0;
};

const BinStats& synthetic_stats() {
  static const BinStats stats = [] {
    const auto obs = testing::synthetic_observations(7);
    return compute_bin_stats(obs, quantile_bin(obs, 10), 2);
  }();
  return stats;
}

const SyntheticRun& synthetic_run(int precision, NmdtMode mode, double time_limit) {
  static std::map<std::pair<int, NmdtMode>, SyntheticRun> cache;
  auto it = cache.find({precision, mode});
  if (it != cache.end()) return it->second;
  SyntheticRun run;
  run.stats = synthetic_stats();
  run.hyper = testing::synthetic_hyper();
  run.hyper.precision = precision;
  run.hyper.time_limit = time_limit;
  SolveOptions so;
  so.mode = mode;
  const auto start = Clock::now();
  run.outcome = solve_fair_plan(run.stats, run.hyper, so);
  run.seconds = seconds_since(start);
  g_reports.push_back({run.outcome.report, false});
  return cache.emplace(std::make_pair(precision, mode), std::move(run)).first->second;
}

constexpr double kMainTimeLimit = 60.0;
constexpr double kSweepTimeLimit = 15.0;
constexpr double kFeasTol = 1e-6;

// Largest |coef| in the link row of `lin`, which sets its feasibility allowance.
double link_row_scale(const LinkLinearization& lin, const BilinearLink& link) {
  double scale = std::max(1.0, lin.expansion.t_hi);
  for (const LinearTerm& t : link.rhs) scale = std::max(scale, std::abs(t.coef));
  return scale;
}

// Tolerance part of the residual bound: the link row's own allowance plus
// the digit and remainder product rows, each scaled by v_hi.
double tolerance_allowance(const LinkLinearization& lin, const BilinearLink& link) {
  const double width = lin.expansion.t_hi - lin.expansion.t_lo;
  return kFeasTol * (link_row_scale(lin, link) + 2.0 * width * std::max(1.0, lin.v_hi));
}

double realized_ratio(const BilinearLink& link, std::span<const double> x) {
  double rhs = 0.0, v = 0.0;
  for (const LinearTerm& t : link.rhs) rhs += t.coef * x[t.var];
  for (const LinearTerm& t : link.inflow) v += t.coef * x[t.var];
  return rhs / v;
}

// ---------------------------------------------------------------------------
// 2. Constraint satisfaction end-to-end

Verdict constraint_satisfaction() {
  const SyntheticRun& run = synthetic_run(-12, NmdtMode::kExact, kMainTimeLimit);
  const SolveOutcome& out = run.outcome;
  if (!out.plan) {
    return {false, fmt("no plan (status %s after %.1fs)", to_string(out.report.status),
                       run.seconds)};
  }
  const BinStats moved = expected_assignment_stats(*out.plan, run.stats);
  const FairnessViolations fv = fairness_violations(moved);
  // A priori PRP slack: the model's t may differ from the realized ratio by
  // the link residual divided by v.
  const double delta = std::exp2(run.hyper.precision);
  std::vector<double> env(out.milp.links.size(), 0.0);
  for (const LinkLinearization& lin : out.milp.links) {
    const BilinearLink& link = out.model.links[lin.link];
    const double width = lin.expansion.t_hi - lin.expansion.t_lo;
    const double residual = width * delta * (lin.v_hi - lin.v_lo) / 4.0 +
                            tolerance_allowance(lin, link);
    env[lin.link] = lin.expansion.fixed() ? kFeasTol * link_row_scale(lin, link) / lin.v_lo
                                          : residual / lin.v_lo;
  }
  double slack = 0.0;
  const int B = run.stats.num_bins;
  for (int b = 0; b < B; ++b) slack = std::max(slack, env[b] + env[B + b]);
  const auto& h = run.hyper;
  const bool pass = fv.dp <= h.eps_dp + 1e-6 && fv.eodds <= h.eps_eodds + 1e-6 &&
                    fv.prp <= h.eps_prp + slack + 1e-6 && run.seconds < 300.0;
  return {pass, fmt("DP %.6f EOdds %.6f (limit %.6f), PRP %.6f (limit %.6f incl. slack %.2e), "
                    "status %s gap %.4f, %.1fs",
                    fv.dp, fv.eodds, h.eps_dp + 1e-6, fv.prp, h.eps_prp + slack + 1e-6, slack,
                    to_string(out.report.status), out.report.gap, run.seconds)};
}

// ---------------------------------------------------------------------------
// 3. Minimal AUC cost

Verdict minimal_auc_cost() {
  const SyntheticRun& run = synthetic_run(-12, NmdtMode::kExact, kMainTimeLimit);
  if (!run.outcome.plan) return {false, "no plan from the criterion 2 run"};
  const double base = auc_from_bins(run.stats);
  const double after = auc_from_bins(expected_assignment_stats(*run.outcome.plan, run.stats));
  return {std::abs(after - base) <= 0.01,
          fmt("base AUC %.5f, after %.5f, change %.5f (limit 0.01)", base, after, after - base)};
}

// ---------------------------------------------------------------------------
// 4. Bound validity

struct BoundFixture {
  std::string name;
  BinStats stats;
  Hyperparams hyper;
};

std::vector<BoundFixture> bound_fixtures() {
  std::vector<BoundFixture> out;
  Hyperparams tiny;
  tiny.eps_dp = tiny.eps_eodds = tiny.eps_prp = 0.25;
  tiny.window = 2;
  out.push_back({"TINY-A eps 0.25", testing::tiny_a_stats(), tiny});
  Hyperparams open = tiny;
  open.eps_dp = open.eps_eodds = 1.0;
  out.push_back({"TINY-A eps 1", testing::tiny_a_stats(), open});
  std::mt19937_64 rng(99);
  Hyperparams three;
  three.eps_dp = three.eps_eodds = 0.35;
  three.window = 2;
  out.push_back({"random 3-bin", testing::random_tiny_stats(rng, 3), three});
  Hyperparams synth = testing::synthetic_hyper();
  synth.eps_dp = synth.eps_eodds = 0.12;
  out.push_back({"synthetic eps 0.12", synthetic_stats(), synth});
  return out;
}

// Extremes of t over a 0.01 grid of TINY-A plans, checked against the
// linear rows of `model`.
std::vector<std::pair<double, double>> tiny_grid_oracle(const MfoptModel& model) {
  std::vector<std::pair<double, double>> range(4, {INFINITY, -INFINITY});
  std::vector<double> pt(model.lp.num_vars(), 0.0);
  const int steps = 50;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      for (int c = 0; c <= steps; ++c) {
        for (int d = 0; d <= steps; ++d) {
          const double move[2][2] = {{0.01 * a, 0.01 * b}, {0.01 * c, 0.01 * d}};
          for (int g = 0; g < 2; ++g) {
            pt[model.x_var(g, 0, 1)] = move[g][0];
            pt[model.x_var(g, 0, 0)] = 1.0 - move[g][0];
            pt[model.x_var(g, 1, 0)] = move[g][1];
            pt[model.x_var(g, 1, 1)] = 1.0 - move[g][1];
          }
          bool ok = true;
          for (int r = 0; r < model.lp.num_rows() && ok; ++r) {
            const RowKind kind = model.row_kinds[r];
            if (kind != RowKind::kDemographicParity && kind != RowKind::kEqualOddsPositive &&
                kind != RowKind::kEqualOddsNegative) {
              continue;
            }
            const LpRow& row = model.lp.rows[r];
            const double act = model.lp.row_activity(r, pt);
            ok = row.sense == RowSense::kLessEqual ? act <= row.rhs + 1e-12
                                                    : act >= row.rhs - 1e-12;
          }
          if (!ok) continue;
          for (std::size_t k = 0; k < 4; ++k) {
            const double t = realized_ratio(model.links[k], pt);
            range[k].first = std::min(range[k].first, t);
            range[k].second = std::max(range[k].second, t);
          }
        }
      }
    }
  }
  return range;
}

Verdict bound_validity() {
  std::string detail;
  bool pass = true;
  for (const BoundFixture& f : bound_fixtures()) {
    const MfoptModel model = build_model(f.stats, f.hyper);
    const VarBounds vb = tighten_all(model, f.stats);
    std::mt19937_64 rng(4242);
    int accepted = 0, outside = 0;
    long long draws = 0;
    while (accepted < 1000 && draws < 5'000'000) {
      ++draws;
      const auto plan = testing::sample_plan(model, rng);
      if (!plan) continue;
      ++accepted;
      for (std::size_t k = 0; k < model.links.size(); ++k) {
        const BilinearLink& link = model.links[k];
        const LinkBounds& b = vb.entries[k];
        const double v = (*plan)[link.v_var];
        const double t = (*plan)[link.t_var];
        if (v < b.v_lo - 1e-7 || v > b.v_hi + 1e-7 || t < b.t_lo - 1e-7 || t > b.t_hi + 1e-7) {
          ++outside;
        }
      }
    }
    pass = pass && accepted == 1000 && outside == 0;
    detail += fmt("%s: %d plans (%lld draws), %d outside; ", f.name.c_str(), accepted, draws,
                  outside);
  }
  // Grid-search oracle for the linear-fractional t bounds.
  double worst = 0.0;
  for (const BoundFixture& f : bound_fixtures()) {
    if (f.name.rfind("TINY-A", 0) != 0) continue;
    const MfoptModel model = build_model(f.stats, f.hyper);
    const VarBounds vb = tighten_all(model, f.stats);
    const auto grid = tiny_grid_oracle(model);
    for (std::size_t k = 0; k < 4; ++k) {
      worst = std::max({worst, std::abs(vb.entries[k].t_lo - grid[k].first),
                        std::abs(vb.entries[k].t_hi - grid[k].second)});
    }
  }
  pass = pass && worst <= 1e-3;
  detail += fmt("TINY-A t bounds vs 0.01 grid: max |diff| %.2e (limit 1e-3)", worst);
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 5. NMDT precision

Verdict nmdt_precision() {
  bool pass = true;
  std::string detail;
  for (int p : {-6, -10, -12}) {
    for (NmdtMode mode : {NmdtMode::kApprox, NmdtMode::kExact}) {
      const double limit = p == -12 && mode == NmdtMode::kExact ? kMainTimeLimit : kSweepTimeLimit;
      const SyntheticRun& run = synthetic_run(p, mode, limit);
      const SolveOutcome& out = run.outcome;
      if (!out.report.has_incumbent) {
        pass = false;
        detail += fmt("%sp=%d %s: no solution", detail.empty() ? "" : "; ", p, to_string(mode));
        continue;
      }
      const double delta = std::exp2(p);
      double worst_ratio = 0.0, worst_residual = 0.0;
      for (const LinkLinearization& lin : out.milp.links) {
        const BilinearLink& link = out.model.links[lin.link];
        const auto& x = out.report.incumbent;
        double rhs = 0.0;
        for (const LinearTerm& t : link.rhs) rhs += t.coef * x[t.var];
        const double residual = std::abs(x[link.t_var] * x[link.v_var] - rhs);
        const double width = lin.expansion.t_hi - lin.expansion.t_lo;
        double bound = 0.0;
        if (lin.expansion.fixed()) {
          bound = kFeasTol * link_row_scale(lin, link);
        } else if (mode == NmdtMode::kApprox) {
          bound = width * delta * lin.v_hi;
        } else {
          bound = width * delta * (lin.v_hi - lin.v_lo) / 4.0 + tolerance_allowance(lin, link);
        }
        worst_residual = std::max(worst_residual, residual);
        worst_ratio = std::max(worst_ratio, residual / bound);
      }
      pass = pass && worst_ratio <= 1.0;
      detail += fmt("%sp=%d %s max residual %.2e (%.2f of bound)", detail.empty() ? "" : "; ",
                    p, to_string(mode), worst_residual, worst_ratio);
    }
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 6. Gap accounting

Verdict gap_accounting() {
  int checked = 0, optimal = 0, errors = 0;
  for (const ReportRecord& rec : g_reports) {
    const SolveReport& r = rec.report;
    if (!r.has_incumbent) continue;
    ++checked;
    if (!(r.best_lower_bound <= r.incumbent_objective)) ++errors;
    const double denom = std::max(std::abs(r.incumbent_objective), 1e-9);
    const double gap = std::max(0.0, r.incumbent_objective - r.best_lower_bound) / denom;
    if (std::abs(gap - r.gap) > 1e-12) ++errors;
    if (rec.oracle_verified && r.status == MilpStatus::kOptimal) {
      ++optimal;
      if (r.gap != 0.0) ++errors;
    }
  }
  return {checked > 0 && optimal >= 20 && errors == 0,
          fmt("%d reports checked (%d oracle-verified optimal), %d errors", checked, optimal,
              errors)};
}

// ---------------------------------------------------------------------------
// 7. Frontier correctness

FrontierPoint make_point(double auc, double dp, double eo, double prp) {
  FrontierPoint p;
  p.auc = auc;
  p.eps_dp = dp;
  p.eps_eodds = eo;
  p.eps_prp = prp;
  p.has_metrics = true;
  p.status = MilpStatus::kOptimal;
  return p;
}

bool same_point(const FrontierPoint& a, const FrontierPoint& b) {
  return a.auc == b.auc && a.eps_dp == b.eps_dp && a.eps_eodds == b.eps_eodds &&
         a.eps_prp == b.eps_prp;
}

Verdict frontier_correctness() {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> level(0, 7);
  std::vector<FrontierPoint> pts;
  for (int i = 0; i < 500; ++i) {
    pts.push_back(make_point(0.70 + 0.005 * level(rng), 0.005 * level(rng), 0.005 * level(rng),
                             0.005 * level(rng)));
  }
  const auto front = non_dominated(pts);
  int errors = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // brute force: dominated iff some point is >= everywhere and > somewhere
    bool dominated = false;
    for (const auto& q : pts) {
      const bool ge = q.auc >= pts[i].auc && q.eps_dp <= pts[i].eps_dp &&
                      q.eps_eodds <= pts[i].eps_eodds && q.eps_prp <= pts[i].eps_prp;
      dominated = dominated || (ge && !same_point(q, pts[i]));
    }
    const auto copies = std::count_if(front.begin(), front.end(),
                                      [&](const FrontierPoint& f) { return same_point(f, pts[i]); });
    if (copies != (dominated ? 0 : 1)) ++errors;
  }

  // Three-point frontier: a base model and two trades away from it. The
  // DP-for-EOdds query lands on the DP-for-PRP point.
  const FrontierPoint base = make_point(0.7434, 0.0123, 0.018, 0.0123);
  const FrontierPoint auc_for_prp = make_point(0.7422, 0.0123, 0.0180, 0.0067);
  const FrontierPoint dp_for_prp = make_point(0.7436, 0.0152, 0.0123, 0.0067);
  const std::vector<FrontierPoint> table{base, auc_for_prp, dp_for_prp};
  const auto table_front = non_dominated(table);
  struct Query {
    Axis cost, benefit;
    const FrontierPoint* expected;
  };
  const Query queries[] = {{Axis::kAuc, Axis::kDp, nullptr},
                           {Axis::kAuc, Axis::kEOdds, nullptr},
                           {Axis::kAuc, Axis::kPrp, &auc_for_prp},
                           {Axis::kDp, Axis::kPrp, &dp_for_prp},
                           {Axis::kEOdds, Axis::kPrp, nullptr},
                           {Axis::kDp, Axis::kEOdds, &dp_for_prp}};
  int table_errors = table_front.size() == 3 ? 0 : 1;
  for (const Query& q : queries) {
    const auto hit = tradeoff_query(table_front, base, q.cost, q.benefit);
    const bool ok = q.expected ? hit && same_point(*hit, *q.expected) : !hit.has_value();
    if (!ok) ++table_errors;
  }
  return {errors == 0 && table_errors == 0,
          fmt("500 random points: %zu non-dominated, %d brute-force errors; trade-off table: "
              "%d of 6 queries wrong",
              front.size(), errors, table_errors)};
}

// ---------------------------------------------------------------------------
// 8. Fairness metric regression

Verdict metric_regression() {
  const BinStats s = testing::tiny_a_stats();
  const FairnessViolations fv = fairness_violations(s);
  const Dataset data = load_dataset(fs::path(MFOPT_FIXTURE_DIR) / "tiny_a.csv");
  const BinStats loaded = compute_bin_stats(data.observations, quantile_bin(data.observations, 2),
                                            data.num_groups(), data.group_names);
  const FairnessViolations lv = fairness_violations(loaded);
  const double auc = auc_from_bins(s, kPooled);
  const double oracle = testing::rank_auc_oracle(s);
  const bool exact = fv.dp == 0.0 && fv.eodds == 0.2 && fv.prp == 0.2 && lv.dp == 0.0 &&
                     lv.eodds == 0.2 && lv.prp == 0.2;
  const bool pass = exact && std::abs(auc - oracle) <= 1e-9;
  return {pass, fmt("violations (%.17g, %.17g, %.17g), from CSV (%.17g, %.17g, %.17g); pooled "
                    "AUC %.12f vs rank oracle %.12f",
                    fv.dp, fv.eodds, fv.prp, lv.dp, lv.eodds, lv.prp, auc, oracle)};
}

// ---------------------------------------------------------------------------
// 9. Reproducibility

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One full pipeline run in `dir`; returns artifact name -> bytes, or an
// error message under the key "error".
std::map<std::string, std::string> pipeline_run(const fs::path& dir) {
  fs::create_directories(dir);
  std::map<std::string, std::string> artifacts;
  const std::string tiny = std::string(MFOPT_FIXTURE_DIR) + "/tiny_a.csv";
  const std::string synth = (dir / "synthetic.csv").string();
  {
    std::ofstream out(synth);
    out << "score,label,group\n";
    char line[64];
    for (const Observation& o : testing::synthetic_observations(7)) {
      std::snprintf(line, sizeof line, "%.17g,%d,%s\n", o.score, o.label, o.group ? "b" : "a");
      out << line;
    }
  }
  auto p = [&](const char* name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> commands{
      {"solve", "--input", synth, "--bins", "10", "--eps-dp", "0.05", "--eps-eodds", "0.05",
       "--eps-prp", "0.05", "--window", "5", "--precision", "-12", "--node-limit", "10",
       "--time-limit", "600", "--omit-timing", "--quiet", "--plan", p("plan.json"), "--report",
       p("report.json")},
      {"apply", "--input", synth, "--plan", p("plan.json"), "--mode", "stochastic", "--seed",
       "42", "--output", p("stochastic.csv")},
      {"apply", "--input", synth, "--plan", p("plan.json"), "--mode", "interpolated", "--seed",
       "42", "--output", p("interpolated.csv")},
      {"apply", "--input", synth, "--plan", p("plan.json"), "--mode", "expected", "--output",
       p("expected.csv")},
      {"audit", "--input", p("interpolated.csv"), "--score-column", "new_score", "--eval-bins",
       "100", "--output", p("audit.json")},
      {"frontier", "--input", tiny, "--bins", "2", "--window", "2", "--precision", "-8",
       "--grid-dp", "0,0.1", "--grid-eodds", "0.05,0.25", "--grid-prp", "0.05,0.25",
       "--time-limit", "60", "--omit-timing", "--output", p("frontier.csv")},
  };
  for (const auto& args : commands) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != cli::kExitOk) {
      artifacts["error"] = args.front() + " exited with " + std::to_string(code) + ": " + err.str();
      return artifacts;
    }
  }
  for (const char* name : {"plan.json", "report.json", "stochastic.csv", "interpolated.csv",
                           "expected.csv", "audit.json", "frontier.csv"}) {
    artifacts[name] = slurp(dir / name);
  }
  return artifacts;
}

Verdict reproducibility() {
  std::random_device rd;
  const fs::path root = fs::temp_directory_path() / ("mfopt-acceptance-" + std::to_string(rd()));
  const auto first = pipeline_run(root / "run1");
  const auto second = pipeline_run(root / "run2");
  fs::remove_all(root);
  for (const auto* run : {&first, &second}) {
    if (run->count("error")) return {false, run->at("error")};
  }
  int identical = 0;
  std::string differing;
  std::size_t bytes = 0;
  for (const auto& [name, text] : first) {
    bytes += text.size();
    if (second.at(name) == text && !text.empty()) {
      ++identical;
    } else {
      differing += " " + name;
    }
  }
  const bool pass = identical == static_cast<int>(first.size());
  return {pass, fmt("%d/%zu artifacts byte-identical (%zu bytes)%s%s", identical, first.size(),
                    bytes, differing.empty() ? "" : "; differing:", differing.c_str())};
}

}  // namespace

// Optional arguments restrict the run to the listed criterion ids.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle optimality", oracle_optimality},
      {2, "constraint satisfaction", constraint_satisfaction},
      {3, "minimal AUC cost", minimal_auc_cost},
      {4, "bound validity", bound_validity},
      {5, "NMDT precision", nmdt_precision},
      {6, "gap accounting", gap_accounting},
      {7, "frontier correctness", frontier_correctness},
      {8, "fairness metric regression", metric_regression},
      {9, "reproducibility", reproducibility},
  };
  int failures = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    Verdict v;
    const auto start = Clock::now();
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] %d %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return failures;
}
