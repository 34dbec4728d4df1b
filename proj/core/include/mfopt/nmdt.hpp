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

#ifndef MFOPT_NMDT_HPP_
#define MFOPT_NMDT_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mfopt/bounds.hpp"
#include "mfopt/lp.hpp"
#include "mfopt/model.hpp"

namespace mfopt {

// kExact keeps the remainder product r = dlambda * v under its McCormick
// envelope; kApprox drops it.
enum class NmdtMode { kExact, kApprox };

const char* to_string(NmdtMode mode);
std::optional<NmdtMode> parse_nmdt_mode(std::string_view text);

// Widths at or below this are treated as a fixed variable.
inline constexpr double kFixedWidth = 1e-8;

// t = (t_hi - t_lo) * lambda + t_lo,  lambda = sum_l 2^l z_l + dlambda.
// z[k] holds digit l = -(k + 1), most significant first.
struct BinaryExpansion {
  int t_var = -1;
  double t_lo = 0.0;
  double t_hi = 1.0;
  int precision = -1;
  std::vector<int> z;
  int lambda_var = -1;
  int delta_var = -1;

  bool fixed() const { return z.empty(); }
  double fixed_value() const { return 0.5 * (t_lo + t_hi); }
};

// Per-link products: w[k] = z[k] * v, r = dlambda * v (exact mode only).
struct LinkLinearization {
  int link = 0;
  BinaryExpansion expansion;
  double v_lo = 0.0;
  double v_hi = 0.0;
  std::vector<int> w;
  int r_var = -1;
};

struct MilpProblem {
  LpProblem lp;
  std::vector<int> binaries;
  NmdtMode mode = NmdtMode::kExact;
  int precision = -12;
  std::vector<LinkLinearization> links;

  // Checks binary bounds and validates the LP.
  void validate() const;
  // Largest distance of a binary from {0, 1}.
  double max_integrality_violation(std::span<const double> x) const;
};

// Adds lambda, the digits and the remainder to `lp` together with the two
// reconstruction rows. A fixed range (width <= kFixedWidth) pins t instead and
// adds nothing else. Throws Error(kInvalidArgument) when precision >= 0.
BinaryExpansion expand_variable(LpProblem& lp, int t_var, double t_lo, double t_hi,
                                int precision);

// Replaces every bilinear link by its NMDT linearization. All linear rows of
// the model are carried over unchanged and v/t receive the supplied bounds.
MilpProblem linearize_links(const MfoptModel& model, const VarBounds& bounds, int precision,
                            NmdtMode mode);

}  // namespace mfopt

#endif  // MFOPT_NMDT_HPP_
