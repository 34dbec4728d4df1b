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

#ifndef MFOPT_TOOLS_CLI_HPP_
#define MFOPT_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "mfopt/error.hpp"

namespace mfopt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitSchema = 3,
  kExitValidation = 4,
  kExitOverlap = 5,
  kExitBoundsInfeasible = 6,
  kExitInfeasible = 7,
  kExitNoIncumbent = 8,
  kExitPlanMismatch = 9,
  kExitIo = 10,
  kExitExtraction = 11,
  kExitBinning = 12,
  kExitModel = 13,
  kExitUndefinedMetric = 14,
};

int exit_code_for(ErrorCode code);

// Runs one command line (without the program name). Results go to files or
// `out`; diagnostics and progress go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfopt::cli

#endif  // MFOPT_TOOLS_CLI_HPP_
