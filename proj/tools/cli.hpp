// Copyright 2026 The rnatreedit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef RNATREEDIT_TOOLS_CLI_HPP_
#define RNATREEDIT_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rnatreedit/cost_model.hpp"
#include "rnatreedit/structure.hpp"

namespace rnatreedit::cli {

enum ExitCode {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitParse = 2,
  kExitConfig = 3,
  kExitInternal = 4,
};

enum class InputFormat { kAuto, kDotBracket, kCt };

// Reads one structure. Throws InputError naming the file and line.
SecondaryStructure ReadStructure(const std::string& path, InputFormat format,
                                 const ParseOptions& options = {});

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifyOptions {
  // Largest tree in the sampled checks; the oracles refuse more than 8.
  int max_nodes = 8;
  // Largest tree in the exhaustive checks.
  int exhaustive_nodes = 4;
  int samples = 100;
  std::uint64_t seed = 1;
  int ell = 1;
  bool prune = true;
};

// Oracle cross-checks, model validation and the metric-axiom sampler. One
// line per check; returns kExitOk or kExitMismatch.
int RunVerify(const VerifyOptions& options, const CostModel& model,
              std::ostream& out);

// Entry point of the command-line tool.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rnatreedit::cli

#endif  // RNATREEDIT_TOOLS_CLI_HPP_
