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


#ifndef MFOPT_TESTS_SUPPORT_HPP_
#define MFOPT_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mfopt/data.hpp"
#include "mfopt/lp.hpp"
#include "mfopt/model.hpp"
#include "mfopt/nmdt.hpp"

namespace mfopt::testing {

// Two groups of twenty over two bins: g1 n=[10,10] pos=[2,8], g2 n=[10,10]
// pos=[4,6], midpoints 0.25 and 0.75.
BinStats tiny_a_stats();

// Two groups with beta(a, b) scores drawn as gamma ratios; group 1 is shifted
// down and its labels are biased up so the groups disagree on every metric.
std::vector<Observation> synthetic_observations(std::uint64_t seed, int n = 5000);

// Hyperparameters of the synthetic end-to-end run.
Hyperparams synthetic_hyper();

// Exhaustive reference: fixes every binary combination, solves the remaining
// LP and keeps the smallest objective. Empty when every combination fails.
struct EnumerationResult {
  std::optional<double> objective;
  int combinations = 0;
};
EnumerationResult enumerate_binaries(const MilpProblem& milp);

// Random small instance where group 2 has the same positive rate in every
// bin, so its links are fixed and only group 1 carries binaries.
BinStats random_tiny_stats(std::mt19937_64& rng, int bins);

// Rejection sampler over plans that satisfy the linear rows of `model`.
// Returns x, v, t in model ids, or nothing when the draw is rejected.
std::optional<std::vector<double>> sample_plan(const MfoptModel& model, std::mt19937_64& rng);

// Mann-Whitney AUC from mid-ranks of the expanded integral counts, pooled
// over all groups when `group` is negative.
double rank_auc_oracle(const BinStats& stats, int group = -1);

}  // namespace mfopt::testing

#endif  // MFOPT_TESTS_SUPPORT_HPP_
