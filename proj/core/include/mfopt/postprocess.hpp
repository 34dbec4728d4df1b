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

#ifndef MFOPT_POSTPROCESS_HPP_
#define MFOPT_POSTPROCESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfopt/data.hpp"
#include "mfopt/model.hpp"

namespace mfopt {

// Per-group row-stochastic matrices; matrix[g][b][b'] is the probability of
// moving a score from bin b to bin b'.
struct TransitionPlan {
  int num_groups = 0;
  int num_bins = 0;
  std::vector<std::string> group_names;
  std::vector<double> edges;
  std::vector<std::vector<std::vector<double>>> matrix;

  BinSpec spec() const { return BinSpec::from_edges(edges); }

  // Throws Error(kExtraction) when a row does not sum to one within
  // `tolerance`, an entry leaves [0, 1], a diagonal falls below
  // 1 - retention or mass lands outside the window.
  void validate(double retention, int window, double tolerance = 1e-6) const;

  static TransitionPlan identity(const BinStats& stats);
};

// Reads x from a solver point, clears tiny negatives and renormalizes rows.
// Throws Error(kExtraction) if a row sum is off by more than 1e-4.
TransitionPlan extract_plan(std::span<const double> solution, const MfoptModel& model,
                            const BinStats& stats);

// Draws a destination bin per observation from its source-bin row. One
// mt19937_64 stream seeded with `seed` is consumed in observation order.
std::vector<int> apply_stochastic(const TransitionPlan& plan,
                                  std::span<const Observation> observations,
                                  std::uint64_t seed);

// Affine image of `score` from source bin [al, au] into destination bin.
double interpolate_score(const BinSpec& spec, int source, int destination, double score);

struct ScoredAssignment {
  std::vector<int> bins;
  std::vector<double> scores;
};

// Stochastic bin draw followed by the affine score map.
ScoredAssignment apply_interpolated(const TransitionPlan& plan,
                                    std::span<const Observation> observations,
                                    std::uint64_t seed);

// Deterministic expectation of the interpolated score over the source row.
// The returned bins are the bins of the new scores.
ScoredAssignment apply_expected_score(const TransitionPlan& plan,
                                      std::span<const Observation> observations);

// Moves bin counts by the plan's probabilities.
BinStats expected_assignment_stats(const TransitionPlan& plan, const BinStats& stats);

// Worst-case violations. For more than two groups every pair is compared.
// Bins where some group is empty have undefined PRP; they are listed and
// excluded from the maximum.
struct FairnessViolations {
  double dp = 0.0;
  double eodds = 0.0;
  double prp = 0.0;
  std::vector<double> dp_by_bin;
  std::vector<double> eodds_positive_by_bin;
  std::vector<double> eodds_negative_by_bin;
  std::vector<double> prp_by_bin;  // NaN where undefined
  std::vector<int> prp_undefined_bins;
  // Set when a group has no members, positives or negatives, so some
  // normalized mass is undefined; that term is treated as zero.
  std::vector<std::string> flags;
};

FairnessViolations fairness_violations(const BinStats& stats);

inline constexpr int kPooled = -1;

// ROC AUC with the bins as descending thresholds and trapezoids between
// consecutive cumulative points, which gives ties half credit. Throws
// Error(kUndefinedMetric) without positives or negatives.
double auc_from_bins(const BinStats& stats, int group = kPooled);

// Average precision over the same cumulative thresholds. Throws
// Error(kUndefinedMetric) without positives.
double pr_auc_from_bins(const BinStats& stats, int group = kPooled);

struct MetricsReport {
  FairnessViolations violations;
  std::optional<double> roc_auc;
  std::optional<double> pr_auc;
  std::vector<std::optional<double>> group_roc_auc;
  std::vector<std::optional<double>> group_pr_auc;
  std::vector<std::string> flags;
};

MetricsReport evaluate_metrics(const BinStats& stats);

}  // namespace mfopt

#endif  // MFOPT_POSTPROCESS_HPP_
