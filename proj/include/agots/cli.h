// Copyright 2026 The agots Authors
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


// Command-line front end. Exit codes: 0 success, 1 usage error (bad flags,
// bad or missing config and input files), 2 runtime error. Every error
// line on `err` starts with "error:".

#ifndef AGOTS_CLI_H_
#define AGOTS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace agots {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// `args` excludes the program name.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

// Subcommand names in dispatch order.
const std::vector<std::string>& subcommand_names();

const char* tool_version();

}  // namespace agots

#endif  // AGOTS_CLI_H_
