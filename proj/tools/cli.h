// Copyright 2026 The Graphlin Authors.
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

#ifndef GRAPHLIN_TOOLS_CLI_H_
#define GRAPHLIN_TOOLS_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace graphlin::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

// Seed used when neither --seed nor GRAPHLIN_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20210823;

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`. Returns the process exit code.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphlin::cli

#endif  // GRAPHLIN_TOOLS_CLI_H_
