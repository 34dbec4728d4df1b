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

#include "mfopt/nmdt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfopt/error.hpp"

namespace mfopt {

const char* to_string(NmdtMode mode) {
  return mode == NmdtMode::kExact ? "exact" : "approx";
}

std::optional<NmdtMode> parse_nmdt_mode(std::string_view text) {
  if (text == "exact") return NmdtMode::kExact;
  if (text == "approx") return NmdtMode::kApprox;
  return std::nullopt;
}

void MilpProblem::validate() const {
  lp.validate();
  for (int id : binaries) {
    if (id < 0 || id >= lp.num_vars()) {
      throw Error(ErrorCode::kInvalidArgument, "binary id out of range");
    }
    if (lp.lower[id] < 0.0 || lp.upper[id] > 1.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "binary variable " + lp.names[id] + " has bounds outside [0, 1]");
    }
  }
}

double MilpProblem::max_integrality_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int id : binaries) worst = std::max(worst, std::abs(x[id] - std::round(x[id])));
  return worst;
}

BinaryExpansion expand_variable(LpProblem& lp, int t_var, double t_lo, double t_hi,
                                int precision) {
  if (precision >= 0) {
    throw Error(ErrorCode::kInvalidArgument, "precision exponent must be negative");
  }
  if (t_hi < t_lo) {
    throw Error(ErrorCode::kInvalidArgument, "expansion bounds are reversed for " + lp.names[t_var]);
  }
  BinaryExpansion e;
  e.t_var = t_var;
  e.t_lo = t_lo;
  e.t_hi = t_hi;
  e.precision = precision;
  if (t_hi - t_lo <= kFixedWidth) {
    lp.lower[t_var] = lp.upper[t_var] = e.fixed_value();
    return e;
  }
  lp.lower[t_var] = t_lo;
  lp.upper[t_var] = t_hi;
  const std::string base = lp.names[t_var];
  e.lambda_var = lp.add_variable(0.0, 1.0, 0.0, "lambda_" + base);
  for (int l = -1; l >= precision; --l) {
    e.z.push_back(lp.add_variable(0.0, 1.0, 0.0, "z" + std::to_string(-l) + "_" + base));
  }
  e.delta_var = lp.add_variable(0.0, std::exp2(precision), 0.0, "dlambda_" + base);

  lp.add_row({{t_var, 1.0}, {e.lambda_var, -(t_hi - t_lo)}}, RowSense::kEqual, t_lo);
  std::vector<LinearTerm> digits{{e.lambda_var, 1.0}, {e.delta_var, -1.0}};
  for (std::size_t k = 0; k < e.z.size(); ++k) {
    digits.push_back({e.z[k], -std::exp2(-static_cast<int>(k) - 1)});
  }
  lp.add_row(std::move(digits), RowSense::kEqual, 0.0);
  return e;
}

MilpProblem linearize_links(const MfoptModel& model, const VarBounds& bounds, int precision,
                            NmdtMode mode) {
  if (precision >= 0) {
    throw Error(ErrorCode::kInvalidArgument, "precision exponent must be negative");
  }
  if (bounds.num_groups != model.num_groups || bounds.num_bins != model.num_bins ||
      bounds.entries.size() != model.links.size()) {
    throw Error(ErrorCode::kInvalidArgument, "variable bounds do not match the model shape");
  }
  MilpProblem milp;
  milp.lp = model.lp;
  milp.mode = mode;
  milp.precision = precision;
  LpProblem& lp = milp.lp;

  for (std::size_t k = 0; k < model.links.size(); ++k) {
    const BilinearLink& link = model.links[k];
    const LinkBounds& b = bounds.entries[k];
    const std::string where =
        "(group " + std::to_string(link.group) + ", bin " + std::to_string(link.bin) + ")";
    if (!(b.v_lo <= b.v_hi) || !(b.t_lo <= b.t_hi) || !std::isfinite(b.v_hi)) {
      throw Error(ErrorCode::kInvalidArgument, "missing or invalid bounds for link " + where);
    }
    lp.lower[link.v_var] = b.v_lo;
    lp.upper[link.v_var] = b.v_hi;

    LinkLinearization lin;
    lin.link = static_cast<int>(k);
    lin.v_lo = b.v_lo;
    lin.v_hi = b.v_hi;
    lin.expansion = expand_variable(lp, link.t_var, b.t_lo, b.t_hi, precision);
    const BinaryExpansion& e = lin.expansion;
    const int v = link.v_var;

    // Link row, moved to the form  lhs(v, w, r) - rhs(x) = 0.
    std::vector<LinearTerm> row;
    for (const LinearTerm& term : link.rhs) row.push_back({term.var, -term.coef});
    if (e.fixed()) {
      row.push_back({v, e.fixed_value()});
      lp.add_row(std::move(row), RowSense::kEqual, 0.0);
      milp.links.push_back(std::move(lin));
      continue;
    }
    const double width = e.t_hi - e.t_lo;
    const double vlo = b.v_lo;
    const double vhi = b.v_hi;
    const std::string base = lp.names[link.t_var];
    for (std::size_t d = 0; d < e.z.size(); ++d) {
      const int z = e.z[d];
      const int w = lp.add_variable(0.0, vhi, 0.0, "w" + std::to_string(d + 1) + "_" + base);
      lin.w.push_back(w);
      milp.binaries.push_back(z);
      lp.add_row({{w, 1.0}, {z, -vhi}}, RowSense::kLessEqual, 0.0);
      lp.add_row({{w, 1.0}, {z, -vlo}}, RowSense::kGreaterEqual, 0.0);
      lp.add_row({{w, 1.0}, {v, -1.0}, {z, -vlo}}, RowSense::kLessEqual, -vlo);
      lp.add_row({{w, 1.0}, {v, -1.0}, {z, -vhi}}, RowSense::kGreaterEqual, -vhi);
      row.push_back({w, width * std::exp2(-static_cast<int>(d) - 1)});
    }
    if (mode == NmdtMode::kExact) {
      const double delta = std::exp2(precision);
      const int dl = e.delta_var;
      lin.r_var = lp.add_variable(0.0, delta * vhi, 0.0, "r_" + base);
      const int r = lin.r_var;
      lp.add_row({{r, 1.0}, {dl, -vlo}}, RowSense::kGreaterEqual, 0.0);
      lp.add_row({{r, 1.0}, {v, -delta}, {dl, -vhi}}, RowSense::kGreaterEqual, -delta * vhi);
      lp.add_row({{r, 1.0}, {v, -delta}, {dl, -vlo}}, RowSense::kLessEqual, -delta * vlo);
      lp.add_row({{r, 1.0}, {dl, -vhi}}, RowSense::kLessEqual, 0.0);
      row.push_back({r, width});
    }
    row.push_back({v, e.t_lo});
    lp.add_row(std::move(row), RowSense::kEqual, 0.0);
    milp.links.push_back(std::move(lin));
  }
  return milp;
}

}  // namespace mfopt
