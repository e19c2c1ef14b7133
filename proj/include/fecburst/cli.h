// Copyright 2026 The fecburst Authors
//
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

#ifndef FECBURST_CLI_H_
#define FECBURST_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace fecburst::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kUndefined = 3,
  kFeasibility = 4,
  kIo = 5,
};

// Runs the command line `args` (without the program name). Results go to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Formats a value with 12 significant digits, or "NA" for NaN.
std::string format_number(double v);

}  // namespace fecburst::cli

#endif  // FECBURST_CLI_H_
