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

#ifndef MFOPT_SERIALIZE_HPP_
#define MFOPT_SERIALIZE_HPP_

#include <string>
#include <string_view>

#include "mfopt/bnb.hpp"
#include "mfopt/bounds.hpp"
#include "mfopt/data.hpp"
#include "mfopt/frontier.hpp"
#include "mfopt/lp.hpp"
#include "mfopt/model.hpp"
#include "mfopt/nmdt.hpp"
#include "mfopt/postprocess.hpp"

namespace mfopt {

// JSON documents, pretty-printed with two-space indentation. Parsers throw
// Error(kSchema) on malformed input. Layouts are described in docs/formats.md.

std::string dump_json(const BinStats& stats);
BinStats parse_bin_stats_json(std::string_view text);

std::string dump_json(const LpProblem& lp);
std::string dump_json(const MilpProblem& milp);
// The LP plus row kinds and bilinear links.
std::string dump_json(const MfoptModel& model);

std::string dump_json(const VarBounds& bounds);
VarBounds parse_var_bounds_json(std::string_view text);

struct ReportJsonOptions {
  bool include_incumbent = false;
  bool omit_timing = false;
};
std::string dump_json(const SolveReport& report, const ReportJsonOptions& options = {});

std::string dump_json(const TransitionPlan& plan);
TransitionPlan parse_plan_json(std::string_view text);

std::string dump_json(const MetricsReport& metrics);
std::string dump_json(const ModelComparison& comparison);

}  // namespace mfopt

#endif  // MFOPT_SERIALIZE_HPP_
