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

#include "mfopt/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mfopt/error.hpp"

namespace mfopt {

void TransitionPlan::validate(double retention, int window, double tolerance) const {
  auto fail = [&](int g, int b, const std::string& what) {
    throw Error(ErrorCode::kExtraction, "plan group " + group_names[g] + " row " +
                                            std::to_string(b) + ": " + what);
  };
  for (int g = 0; g < num_groups; ++g) {
    for (int b = 0; b < num_bins; ++b) {
      double sum = 0.0;
      for (int bp = 0; bp < num_bins; ++bp) {
        const double p = matrix[g][b][bp];
        if (p < -tolerance || p > 1.0 + tolerance) fail(g, b, "entry outside [0, 1]");
        if (std::abs(b - bp) >= window && p > tolerance) fail(g, b, "mass outside the window");
        sum += p;
      }
      if (std::abs(sum - 1.0) > tolerance) fail(g, b, "row does not sum to 1");
      if (matrix[g][b][b] < 1.0 - retention - tolerance) fail(g, b, "diagonal below retention");
    }
  }
}

TransitionPlan TransitionPlan::identity(const BinStats& stats) {
  TransitionPlan plan;
  plan.num_groups = stats.num_groups;
  plan.num_bins = stats.num_bins;
  plan.group_names = stats.group_names;
  plan.edges = stats.edges;
  plan.matrix.assign(stats.num_groups, std::vector<std::vector<double>>(
                                           stats.num_bins, std::vector<double>(stats.num_bins)));
  for (auto& m : plan.matrix) {
    for (int b = 0; b < stats.num_bins; ++b) m[b][b] = 1.0;
  }
  return plan;
}

TransitionPlan extract_plan(std::span<const double> solution, const MfoptModel& model,
                            const BinStats& stats) {
  TransitionPlan plan = TransitionPlan::identity(stats);
  for (int g = 0; g < model.num_groups; ++g) {
    for (int b = 0; b < model.num_bins; ++b) {
      auto& row = plan.matrix[g][b];
      double sum = 0.0;
      for (int bp = 0; bp < model.num_bins; ++bp) {
        const int id = model.x_var(g, b, bp);
        row[bp] = id >= 0 ? std::max(0.0, solution[id]) : 0.0;
        sum += row[bp];
      }
      if (std::abs(sum - 1.0) > 1e-4) {
        throw Error(ErrorCode::kExtraction,
                    "row " + std::to_string(b) + " of group " + stats.group_names[g] +
                        " sums to " + std::to_string(sum));
      }
      for (double& p : row) p /= sum;
    }
  }
  return plan;
}

namespace {

void check_group(const TransitionPlan& plan, const Observation& o) {
  if (o.group < 0 || o.group >= plan.num_groups) {
    throw Error(ErrorCode::kInvalidArgument,
                "observation group index " + std::to_string(o.group) + " is not in the plan");
  }
}

int draw(const std::vector<double>& row, std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double acc = 0.0;
  int last = 0;
  for (int b = 0; b < static_cast<int>(row.size()); ++b) {
    if (row[b] <= 0.0) continue;
    acc += row[b];
    last = b;
    if (u < acc) return b;
  }
  return last;
}

}  // namespace

std::vector<int> apply_stochastic(const TransitionPlan& plan,
                                  std::span<const Observation> observations,
                                  std::uint64_t seed) {
  const BinSpec spec = plan.spec();
  std::mt19937_64 rng(seed);
  std::vector<int> out;
  out.reserve(observations.size());
  for (const Observation& o : observations) {
    check_group(plan, o);
    out.push_back(draw(plan.matrix[o.group][spec.bin_of(o.score)], rng));
  }
  return out;
}

double interpolate_score(const BinSpec& spec, int source, int destination, double score) {
  const double al = spec.edges[source];
  const double au = spec.edges[source + 1];
  if (!(au > al)) {
    throw Error(ErrorCode::kInvalidArgument, "zero-width bin " + std::to_string(source));
  }
  const double bl = spec.edges[destination];
  const double bu = spec.edges[destination + 1];
  return bl + (score - al) / (au - al) * (bu - bl);
}

ScoredAssignment apply_interpolated(const TransitionPlan& plan,
                                    std::span<const Observation> observations,
                                    std::uint64_t seed) {
  const BinSpec spec = plan.spec();
  ScoredAssignment out;
  out.bins = apply_stochastic(plan, observations, seed);
  out.scores.reserve(observations.size());
  for (std::size_t i = 0; i < observations.size(); ++i) {
    const Observation& o = observations[i];
    out.scores.push_back(interpolate_score(spec, spec.bin_of(o.score), out.bins[i], o.score));
  }
  return out;
}

ScoredAssignment apply_expected_score(const TransitionPlan& plan,
                                      std::span<const Observation> observations) {
  const BinSpec spec = plan.spec();
  ScoredAssignment out;
  out.scores.reserve(observations.size());
  out.bins.reserve(observations.size());
  for (const Observation& o : observations) {
    check_group(plan, o);
    const int a = spec.bin_of(o.score);
    const auto& row = plan.matrix[o.group][a];
    double s = 0.0;
    for (int b = 0; b < plan.num_bins; ++b) {
      if (row[b] != 0.0) s += row[b] * interpolate_score(spec, a, b, o.score);
    }
    s = std::clamp(s, 0.0, 1.0);
    out.scores.push_back(s);
    out.bins.push_back(spec.bin_of(s));
  }
  return out;
}

BinStats expected_assignment_stats(const TransitionPlan& plan, const BinStats& stats) {
  if (plan.num_groups != stats.num_groups || plan.num_bins != stats.num_bins) {
    throw Error(ErrorCode::kPlanMismatch, "plan and statistics have different shapes");
  }
  BinStats out = stats;
  for (int g = 0; g < stats.num_groups; ++g) {
    std::fill(out.count[g].begin(), out.count[g].end(), 0.0);
    std::fill(out.positives[g].begin(), out.positives[g].end(), 0.0);
    for (int b = 0; b < stats.num_bins; ++b) {
      for (int bp = 0; bp < stats.num_bins; ++bp) {
        const double p = plan.matrix[g][b][bp];
        out.count[g][bp] += p * stats.count[g][b];
        out.positives[g][bp] += p * stats.positives[g][b];
      }
    }
  }
  return out;
}

FairnessViolations fairness_violations(const BinStats& stats) {
  const int G = stats.num_groups;
  const int B = stats.num_bins;
  FairnessViolations out;
  out.dp_by_bin.assign(B, 0.0);
  out.eodds_positive_by_bin.assign(B, 0.0);
  out.eodds_negative_by_bin.assign(B, 0.0);
  out.prp_by_bin.assign(B, 0.0);

  auto note = [&](int g, const char* what) {
    const std::string flag = "group " + stats.group_names[g] + " has no " + what;
    if (std::find(out.flags.begin(), out.flags.end(), flag) == out.flags.end()) {
      out.flags.push_back(flag);
    }
  };
  // |p1/w1 - p2/w2| as |p1 w2 - p2 w1| / (w1 w2): one rounding, so equal
  // rationals compare exactly. An empty whole counts as share zero.
  auto gap = [&](double p1, double w1, int g1, double p2, double w2, int g2, const char* what) {
    if (!(w1 > 0.0)) note(g1, what);
    if (!(w2 > 0.0)) note(g2, what);
    if (!(w1 > 0.0) && !(w2 > 0.0)) return 0.0;
    if (!(w1 > 0.0)) return p2 / w2;
    if (!(w2 > 0.0)) return p1 / w1;
    return std::abs(p1 * w2 - p2 * w1) / (w1 * w2);
  };
  for (int b = 0; b < B; ++b) {
    bool prp_defined = true;
    for (int g = 0; g < G; ++g) prp_defined = prp_defined && stats.count[g][b] > 0.0;
    if (!prp_defined) {
      out.prp_by_bin[b] = std::numeric_limits<double>::quiet_NaN();
      out.prp_undefined_bins.push_back(b);
    }
    for (int g1 = 0; g1 < G; ++g1) {
      for (int g2 = g1 + 1; g2 < G; ++g2) {
        const double dp = gap(stats.count[g1][b], stats.group_total(g1), g1, stats.count[g2][b],
                              stats.group_total(g2), g2, "members");
        const double tpr = gap(stats.positives[g1][b], stats.group_positives(g1), g1,
                               stats.positives[g2][b], stats.group_positives(g2), g2, "positives");
        const double fpr = gap(stats.negatives(g1, b), stats.group_negatives(g1), g1,
                               stats.negatives(g2, b), stats.group_negatives(g2), g2, "negatives");
        out.dp_by_bin[b] = std::max(out.dp_by_bin[b], dp);
        out.eodds_positive_by_bin[b] = std::max(out.eodds_positive_by_bin[b], tpr);
        out.eodds_negative_by_bin[b] = std::max(out.eodds_negative_by_bin[b], fpr);
        if (prp_defined) {
          const double prp = gap(stats.positives[g1][b], stats.count[g1][b], g1,
                                 stats.positives[g2][b], stats.count[g2][b], g2, "members");
          out.prp_by_bin[b] = std::max(out.prp_by_bin[b], prp);
        }
      }
    }
    out.dp = std::max(out.dp, out.dp_by_bin[b]);
    out.eodds = std::max({out.eodds, out.eodds_positive_by_bin[b], out.eodds_negative_by_bin[b]});
    if (prp_defined) out.prp = std::max(out.prp, out.prp_by_bin[b]);
  }
  return out;
}

namespace {

struct Column {
  std::vector<double> pos;
  std::vector<double> neg;
  double total_pos = 0.0;
  double total_neg = 0.0;
};

Column slice(const BinStats& stats, int group) {
  if (group != kPooled && (group < 0 || group >= stats.num_groups)) {
    throw Error(ErrorCode::kInvalidArgument, "group index out of range");
  }
  Column c;
  c.pos.assign(stats.num_bins, 0.0);
  c.neg.assign(stats.num_bins, 0.0);
  for (int g = 0; g < stats.num_groups; ++g) {
    if (group != kPooled && g != group) continue;
    for (int b = 0; b < stats.num_bins; ++b) {
      c.pos[b] += stats.positives[g][b];
      c.neg[b] += stats.negatives(g, b);
    }
  }
  for (int b = 0; b < stats.num_bins; ++b) {
    c.total_pos += c.pos[b];
    c.total_neg += c.neg[b];
  }
  return c;
}

std::string slice_name(const BinStats& stats, int group) {
  return group == kPooled ? std::string("pooled data") : "group " + stats.group_names[group];
}

}  // namespace

double auc_from_bins(const BinStats& stats, int group) {
  const Column c = slice(stats, group);
  if (!(c.total_pos > 0.0) || !(c.total_neg > 0.0)) {
    throw Error(ErrorCode::kUndefinedMetric,
                "ROC AUC is undefined for " + slice_name(stats, group) +
                    ": it needs positives and negatives");
  }
  double area = 0.0;
  double tp_above = 0.0;
  for (int b = stats.num_bins - 1; b >= 0; --b) {
    area += c.neg[b] * (tp_above + 0.5 * c.pos[b]);
    tp_above += c.pos[b];
  }
  return area / (c.total_pos * c.total_neg);
}

double pr_auc_from_bins(const BinStats& stats, int group) {
  const Column c = slice(stats, group);
  if (!(c.total_pos > 0.0)) {
    throw Error(ErrorCode::kUndefinedMetric,
                "PR AUC is undefined for " + slice_name(stats, group) + ": it has no positives");
  }
  double ap = 0.0;
  double tp = 0.0;
  double predicted = 0.0;
  for (int b = stats.num_bins - 1; b >= 0; --b) {
    tp += c.pos[b];
    predicted += c.pos[b] + c.neg[b];
    if (c.pos[b] > 0.0) ap += c.pos[b] * tp / predicted;
  }
  return ap / c.total_pos;
}

MetricsReport evaluate_metrics(const BinStats& stats) {
  MetricsReport report;
  report.violations = fairness_violations(stats);
  auto attempt = [&](auto fn, int group) -> std::optional<double> {
    try {
      return fn(stats, group);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUndefinedMetric) throw;
      report.flags.emplace_back(e.what());
      return std::nullopt;
    }
  };
  report.roc_auc = attempt(auc_from_bins, kPooled);
  report.pr_auc = attempt(pr_auc_from_bins, kPooled);
  for (int g = 0; g < stats.num_groups; ++g) {
    report.group_roc_auc.push_back(attempt(auc_from_bins, g));
    report.group_pr_auc.push_back(attempt(pr_auc_from_bins, g));
  }
  return report;
}

}  // namespace mfopt
