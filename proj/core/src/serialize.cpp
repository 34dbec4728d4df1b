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

#include "mfopt/serialize.hpp"

#include <cmath>

#include "json.hpp"
#include "mfopt/error.hpp"

namespace mfopt {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Integral values print without a fractional part.
ordered_json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

ordered_json numbers(const std::vector<double>& values) {
  ordered_json out = ordered_json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : ordered_json(nullptr);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string(what) + " is not valid JSON: " + e.what());
  }
}

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string(what) + " has an unexpected layout: " + e.what());
  }
}

const char* sense_name(RowSense s) {
  switch (s) {
    case RowSense::kLessEqual: return "<=";
    case RowSense::kEqual: return "=";
    case RowSense::kGreaterEqual: return ">=";
  }
  return "?";
}

ordered_json terms_json(const std::vector<LinearTerm>& terms) {
  ordered_json out = ordered_json::array();
  for (const LinearTerm& t : terms) out.push_back(ordered_json::array({t.var, number(t.coef)}));
  return out;
}

ordered_json lp_json(const LpProblem& lp) {
  ordered_json j;
  j["sense"] = lp.sense == ObjectiveSense::kMinimize ? "min" : "max";
  j["objective_offset"] = number(lp.objective_offset);
  ordered_json vars = ordered_json::array();
  for (int i = 0; i < lp.num_vars(); ++i) {
    ordered_json v;
    v["name"] = lp.names[i];
    v["lower"] = number(lp.lower[i]);
    v["upper"] = number(lp.upper[i]);
    v["cost"] = number(lp.objective[i]);
    vars.push_back(std::move(v));
  }
  j["variables"] = std::move(vars);
  ordered_json rows = ordered_json::array();
  for (const LpRow& row : lp.rows) {
    ordered_json r;
    r["terms"] = terms_json(row.terms);
    r["sense"] = sense_name(row.sense);
    r["rhs"] = number(row.rhs);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace

std::string dump_json(const BinStats& stats) {
  ordered_json j;
  j["num_groups"] = stats.num_groups;
  j["num_bins"] = stats.num_bins;
  j["groups"] = stats.group_names;
  j["edges"] = numbers(stats.edges);
  j["midpoints"] = numbers(stats.midpoints);
  ordered_json counts = ordered_json::array();
  ordered_json positives = ordered_json::array();
  for (int g = 0; g < stats.num_groups; ++g) {
    counts.push_back(numbers(stats.count[g]));
    positives.push_back(numbers(stats.positives[g]));
  }
  j["counts"] = std::move(counts);
  j["positives"] = std::move(positives);
  return dump(j);
}

BinStats parse_bin_stats_json(std::string_view text) {
  const json j = parse(text, "bin statistics");
  return guarded("bin statistics", [&] {
    BinStats s;
    s.num_groups = j.at("num_groups").get<int>();
    s.num_bins = j.at("num_bins").get<int>();
    s.group_names = j.at("groups").get<std::vector<std::string>>();
    s.edges = j.at("edges").get<std::vector<double>>();
    s.midpoints = j.at("midpoints").get<std::vector<double>>();
    s.count = j.at("counts").get<std::vector<std::vector<double>>>();
    s.positives = j.at("positives").get<std::vector<std::vector<double>>>();
    bool ok = static_cast<int>(s.group_names.size()) == s.num_groups &&
              static_cast<int>(s.edges.size()) == s.num_bins + 1 &&
              static_cast<int>(s.midpoints.size()) == s.num_bins &&
              static_cast<int>(s.count.size()) == s.num_groups &&
              static_cast<int>(s.positives.size()) == s.num_groups;
    for (int g = 0; ok && g < s.num_groups; ++g) {
      ok = static_cast<int>(s.count[g].size()) == s.num_bins &&
           static_cast<int>(s.positives[g].size()) == s.num_bins;
    }
    if (!ok) throw Error(ErrorCode::kSchema, "bin statistics have inconsistent dimensions");
    return s;
  });
}

std::string dump_json(const LpProblem& lp) { return dump(lp_json(lp)); }

std::string dump_json(const MilpProblem& milp) {
  ordered_json j = lp_json(milp.lp);
  j["binaries"] = milp.binaries;
  j["mode"] = to_string(milp.mode);
  j["precision"] = milp.precision;
  return dump(j);
}

std::string dump_json(const MfoptModel& model) {
  ordered_json j = lp_json(model.lp);
  ordered_json kinds = ordered_json::array();
  for (RowKind k : model.row_kinds) kinds.push_back(to_string(k));
  j["row_kinds"] = std::move(kinds);
  ordered_json links = ordered_json::array();
  for (const BilinearLink& link : model.links) {
    ordered_json l;
    l["group"] = link.group;
    l["bin"] = link.bin;
    l["t"] = link.t_var;
    l["v"] = link.v_var;
    l["rhs"] = terms_json(link.rhs);
    links.push_back(std::move(l));
  }
  j["links"] = std::move(links);
  return dump(j);
}

std::string dump_json(const VarBounds& bounds) {
  ordered_json j;
  j["key"] = bounds.key;
  j["num_groups"] = bounds.num_groups;
  j["num_bins"] = bounds.num_bins;
  ordered_json entries = ordered_json::array();
  for (int g = 0; g < bounds.num_groups; ++g) {
    for (int b = 0; b < bounds.num_bins; ++b) {
      const LinkBounds& e = bounds.at(g, b);
      ordered_json o;
      o["group"] = g;
      o["bin"] = b;
      o["v_lo"] = e.v_lo;
      o["v_hi"] = e.v_hi;
      o["t_lo"] = e.t_lo;
      o["t_hi"] = e.t_hi;
      entries.push_back(std::move(o));
    }
  }
  j["entries"] = std::move(entries);
  return dump(j);
}

VarBounds parse_var_bounds_json(std::string_view text) {
  const json j = parse(text, "bounds cache");
  return guarded("bounds cache", [&] {
    VarBounds out;
    out.key = j.at("key").get<std::string>();
    out.num_groups = j.at("num_groups").get<int>();
    out.num_bins = j.at("num_bins").get<int>();
    out.entries.resize(static_cast<std::size_t>(out.num_groups) * out.num_bins);
    std::vector<bool> seen(out.entries.size(), false);
    for (const json& e : j.at("entries")) {
      const int g = e.at("group").get<int>();
      const int b = e.at("bin").get<int>();
      if (g < 0 || g >= out.num_groups || b < 0 || b >= out.num_bins) {
        throw Error(ErrorCode::kSchema, "bounds cache entry out of range");
      }
      out.at(g, b) = {e.at("v_lo").get<double>(), e.at("v_hi").get<double>(),
                      e.at("t_lo").get<double>(), e.at("t_hi").get<double>()};
      seen[static_cast<std::size_t>(g) * out.num_bins + b] = true;
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (!seen[k]) {
        throw Error(ErrorCode::kSchema, "bounds cache is missing (group " +
                                            std::to_string(k / out.num_bins) + ", bin " +
                                            std::to_string(k % out.num_bins) + ")");
      }
    }
    return out;
  });
}

std::string dump_json(const SolveReport& report, const ReportJsonOptions& options) {
  ordered_json j;
  j["status"] = to_string(report.status);
  j["has_incumbent"] = report.has_incumbent;
  j["incumbent_objective"] =
      report.has_incumbent ? ordered_json(report.incumbent_objective) : ordered_json(nullptr);
  j["best_lower_bound"] = std::isfinite(report.best_lower_bound)
                              ? ordered_json(report.best_lower_bound)
                              : ordered_json(nullptr);
  j["gap"] = report.has_incumbent ? ordered_json(report.gap) : ordered_json(nullptr);
  j["nodes_explored"] = report.nodes_explored;
  j["lp_iterations"] = report.lp_iterations;
  j["wall_seconds"] = options.omit_timing ? 0.0 : report.wall_seconds;
  if (options.include_incumbent && report.has_incumbent) j["incumbent"] = report.incumbent;
  return dump(j);
}

std::string dump_json(const TransitionPlan& plan) {
  ordered_json j;
  j["num_groups"] = plan.num_groups;
  j["num_bins"] = plan.num_bins;
  j["groups"] = plan.group_names;
  j["edges"] = numbers(plan.edges);
  ordered_json matrices = ordered_json::array();
  for (const auto& m : plan.matrix) {
    ordered_json flat = ordered_json::array();
    for (const auto& row : m) {
      for (double p : row) flat.push_back(number(p));
    }
    matrices.push_back(std::move(flat));
  }
  j["matrices"] = std::move(matrices);
  return dump(j);
}

TransitionPlan parse_plan_json(std::string_view text) {
  const json j = parse(text, "plan");
  return guarded("plan", [&] {
    TransitionPlan plan;
    plan.num_groups = j.at("num_groups").get<int>();
    plan.num_bins = j.at("num_bins").get<int>();
    plan.group_names = j.at("groups").get<std::vector<std::string>>();
    plan.edges = j.at("edges").get<std::vector<double>>();
    const auto matrices = j.at("matrices").get<std::vector<std::vector<double>>>();
    const int B = plan.num_bins;
    if (static_cast<int>(plan.group_names.size()) != plan.num_groups ||
        static_cast<int>(plan.edges.size()) != B + 1 ||
        static_cast<int>(matrices.size()) != plan.num_groups) {
      throw Error(ErrorCode::kSchema, "plan has inconsistent dimensions");
    }
    for (const auto& flat : matrices) {
      if (static_cast<int>(flat.size()) != B * B) {
        throw Error(ErrorCode::kSchema, "plan matrix is not num_bins x num_bins");
      }
      std::vector<std::vector<double>> m(B, std::vector<double>(B));
      for (int b = 0; b < B; ++b) {
        for (int bp = 0; bp < B; ++bp) m[b][bp] = flat[static_cast<std::size_t>(b) * B + bp];
      }
      plan.matrix.push_back(std::move(m));
    }
    return plan;
  });
}

std::string dump_json(const MetricsReport& metrics) {
  const FairnessViolations& v = metrics.violations;
  ordered_json j;
  j["eps_dp"] = v.dp;
  j["eps_eodds"] = v.eodds;
  j["eps_prp"] = v.prp;
  j["roc_auc"] = optional_number(metrics.roc_auc);
  j["pr_auc"] = optional_number(metrics.pr_auc);
  ordered_json groups = ordered_json::array();
  for (std::size_t g = 0; g < metrics.group_roc_auc.size(); ++g) {
    ordered_json o;
    o["roc_auc"] = optional_number(metrics.group_roc_auc[g]);
    o["pr_auc"] = optional_number(metrics.group_pr_auc[g]);
    groups.push_back(std::move(o));
  }
  j["groups"] = std::move(groups);
  ordered_json bins;
  bins["dp"] = v.dp_by_bin;
  bins["eodds_positive"] = v.eodds_positive_by_bin;
  bins["eodds_negative"] = v.eodds_negative_by_bin;
  ordered_json prp = ordered_json::array();
  for (double p : v.prp_by_bin) prp.push_back(std::isnan(p) ? ordered_json(nullptr) : ordered_json(p));
  bins["prp"] = std::move(prp);
  j["by_bin"] = std::move(bins);
  j["prp_undefined_bins"] = v.prp_undefined_bins;
  std::vector<std::string> flags = v.flags;
  flags.insert(flags.end(), metrics.flags.begin(), metrics.flags.end());
  j["flags"] = flags;
  return dump(j);
}

std::string dump_json(const ModelComparison& comparison) {
  auto summary = [](const FrontierSummary& s) {
    ordered_json o;
    if (!s.distance) {
      o["admissible"] = false;
      o["message"] = "no admissible point";
      return o;
    }
    o["admissible"] = true;
    o["distance"] = *s.distance;
    ordered_json p;
    p["auc"] = s.point->auc;
    p["eps_dp"] = s.point->eps_dp;
    p["eps_eodds"] = s.point->eps_eodds;
    p["eps_prp"] = s.point->eps_prp;
    o["point"] = std::move(p);
    return o;
  };
  ordered_json j;
  j["auc_min"] = comparison.auc_min;
  j["a"] = summary(comparison.a);
  j["b"] = summary(comparison.b);
  j["winner"] = comparison.winner;
  return dump(j);
}

}  // namespace mfopt
