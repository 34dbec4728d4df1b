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


#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "mfopt/bnb.hpp"
#include "mfopt/bounds.hpp"
#include "mfopt/data.hpp"
#include "mfopt/model.hpp"
#include "mfopt/nmdt.hpp"
#include "mfopt/postprocess.hpp"

namespace {

using namespace mfopt;

std::vector<Observation> observations(int n) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Observation> out(n);
  for (int i = 0; i < n; ++i) {
    const int g = i % 2;
    const double s = g ? std::sqrt(u(rng)) : u(rng) * 0.9;
    out[i] = {s, u(rng) < s ? 1 : 0, g};
  }
  return out;
}

Hyperparams hyper(int bins) {
  Hyperparams h;
  h.bins = bins;
  h.eps_dp = h.eps_eodds = h.eps_prp = 0.05;
  h.window = std::min(bins, 5);
  h.precision = -8;
  return h;
}

BinStats stats(int n, int bins) {
  const auto obs = observations(n);
  return compute_bin_stats(obs, quantile_bin(obs, bins), 2);
}

void BM_BinStats(benchmark::State& state) {
  const auto obs = observations(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_bin_stats(obs, quantile_bin(obs, 20), 2));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BinStats)->Arg(10'000)->Arg(100'000);

void BM_RelaxationLp(benchmark::State& state) {
  const BinStats s = stats(5000, static_cast<int>(state.range(0)));
  const MfoptModel model = build_model(s, hyper(static_cast<int>(state.range(0))));
  const MilpProblem milp = linearize_links(model, tighten_all(model, s), -8, NmdtMode::kExact);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(milp.lp));
}
BENCHMARK(BM_RelaxationLp)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_TightenBounds(benchmark::State& state) {
  const BinStats s = stats(5000, static_cast<int>(state.range(0)));
  const MfoptModel model = build_model(s, hyper(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(tighten_all(model, s));
}
BENCHMARK(BM_TightenBounds)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SmallBranchAndBound(benchmark::State& state) {
  const BinStats s = stats(2000, 3);
  Hyperparams h = hyper(3);
  h.precision = static_cast<int>(-state.range(0));
  const MfoptModel model = build_model(s, h);
  const MilpProblem milp = linearize_links(model, tighten_all(model, s), h.precision,
                                           NmdtMode::kExact);
  MilpOptions opts;
  opts.time_limit = 30.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_milp(milp, opts));
}
BENCHMARK(BM_SmallBranchAndBound)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
