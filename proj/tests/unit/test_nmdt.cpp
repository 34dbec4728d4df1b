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


#include <cmath>
#include <random>

#include "doctest.h"
#include "mfopt/bounds.hpp"
#include "mfopt/error.hpp"
#include "mfopt/nmdt.hpp"
#include "support.hpp"

using namespace mfopt;

namespace {

double link_residual(const BilinearLink& link, std::span<const double> x) {
  double rhs = 0.0;
  for (const LinearTerm& t : link.rhs) rhs += t.coef * x[t.var];
  return std::abs(x[link.t_var] * x[link.v_var] - rhs);
}

MilpProblem tiny_milp(NmdtMode mode, int p, MfoptModel& model) {
  const BinStats s = testing::tiny_a_stats();
  Hyperparams h;
  h.eps_dp = h.eps_eodds = h.eps_prp = 0.25;
  h.window = 2;
  h.precision = p;
  model = build_model(s, h);
  return linearize_links(model, tighten_all(model, s), p, mode);
}

}  // namespace

TEST_CASE("expansion of 0.3 at precision 2^-2") {
  LpProblem lp;
  const int t = lp.add_variable(0.0, 1.0, 0.0, "t");
  const BinaryExpansion e = expand_variable(lp, t, 0.0, 1.0, -2);
  REQUIRE(e.z.size() == 2);
  CHECK(lp.num_vars() == 5);
  CHECK(lp.num_rows() == 2);
  CHECK(lp.upper[e.delta_var] == 0.25);
  // digits (0, 1) with remainder 0.05 reproduce t = 0.3
  std::vector<double> pt(lp.num_vars(), 0.0);
  pt[t] = 0.3;
  pt[e.lambda_var] = 0.3;
  pt[e.z[0]] = 0.0;
  pt[e.z[1]] = 1.0;
  pt[e.delta_var] = 0.05;
  CHECK(lp.max_violation(pt) < 1e-15);
  // digits (1, 0) cannot
  std::vector<double> lo = lp.lower, hi = lp.upper;
  lo[t] = hi[t] = 0.3;
  lo[e.z[0]] = hi[e.z[0]] = 1.0;
  lo[e.z[1]] = hi[e.z[1]] = 0.0;
  LpProblem fixed = lp;
  fixed.lower = lo;
  fixed.upper = hi;
  CHECK(solve_lp(fixed).status == LpStatus::kInfeasible);
}

TEST_CASE("expansion rescales onto the variable range") {
  LpProblem lp;
  const int t = lp.add_variable(0.0, 1.0, 0.0, "t");
  const BinaryExpansion e = expand_variable(lp, t, 0.2, 0.6, -3);
  CHECK(lp.lower[t] == 0.2);
  CHECK(lp.upper[t] == 0.6);
  std::vector<double> pt(lp.num_vars(), 0.0);
  // t = 0.45 -> lambda = 0.625 = 0.101b
  pt[t] = 0.45;
  pt[e.lambda_var] = 0.625;
  pt[e.z[0]] = 1.0;
  pt[e.z[2]] = 1.0;
  CHECK(lp.max_violation(pt) < 1e-12);
  CHECK_THROWS_AS(expand_variable(lp, t, 0.0, 1.0, 0), Error);
}

TEST_CASE("narrow ranges pin the variable") {
  LpProblem lp;
  const int t = lp.add_variable(0.0, 1.0, 0.0, "t");
  const BinaryExpansion e = expand_variable(lp, t, 0.4, 0.4 + 5e-9, -6);
  CHECK(e.fixed());
  CHECK(lp.num_vars() == 1);
  CHECK(lp.lower[t] == lp.upper[t]);
  CHECK(lp.lower[t] == doctest::Approx(0.4 + 2.5e-9).epsilon(1e-15));
}

TEST_CASE("linearized TINY-A structure") {
  MfoptModel model;
  const MilpProblem exact = tiny_milp(NmdtMode::kExact, -4, model);
  CHECK_NOTHROW(exact.validate());
  CHECK(exact.links.size() == 4);
  int expanded = 0;
  for (const auto& lin : exact.links) expanded += lin.expansion.fixed() ? 0 : 1;
  CHECK(exact.binaries.size() == static_cast<std::size_t>(4 * expanded));
  // per expanded link: 4 rows per digit product, 4 envelope rows, 2 expansion
  // rows and the link row
  CHECK(exact.lp.num_rows() == model.lp.num_rows() + expanded * (4 * 4 + 4 + 2 + 1));
  const MilpProblem approx = tiny_milp(NmdtMode::kApprox, -4, model);
  CHECK(approx.lp.num_rows() == model.lp.num_rows() + expanded * (4 * 4 + 2 + 1));
  for (const auto& lin : approx.links) CHECK(lin.r_var == -1);
}

TEST_CASE("link residuals respect the precision envelope at random digit settings") {
  std::mt19937_64 rng(17);
  for (NmdtMode mode : {NmdtMode::kExact, NmdtMode::kApprox}) {
    MfoptModel model;
    const MilpProblem milp = tiny_milp(mode, -4, model);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
      LpProblem lp = milp.lp;
      for (double& c : lp.objective) c = unit(rng);
      for (int z : milp.binaries) lp.lower[z] = lp.upper[z] = unit(rng) > 0 ? 1.0 : 0.0;
      const LpSolution sol = solve_lp(lp);
      if (sol.status != LpStatus::kOptimal) continue;
      ++solved;
      for (const auto& lin : milp.links) {
        const auto& e = lin.expansion;
        const double width = e.t_hi - e.t_lo;
        const double delta = std::exp2(milp.precision);
        const double bound = mode == NmdtMode::kApprox
                                 ? width * delta * lin.v_hi
                                 : width * delta * (lin.v_hi - lin.v_lo) / 4.0;
        CHECK(link_residual(model.links[lin.link], sol.primal) <= bound + 1e-6);
      }
    }
    CHECK(solved > 0);
  }
}

TEST_CASE("integrality measure") {
  MfoptModel model;
  const MilpProblem milp = tiny_milp(NmdtMode::kExact, -2, model);
  std::vector<double> pt(milp.lp.num_vars(), 0.0);
  CHECK(milp.max_integrality_violation(pt) == 0.0);
  REQUIRE_FALSE(milp.binaries.empty());
  pt[milp.binaries.front()] = 0.3;
  CHECK(milp.max_integrality_violation(pt) == doctest::Approx(0.3));
}
