// Copyright 2026 The SSMT Authors.
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

#ifndef SSMT_TOOLS_CLI_COMMANDS_H_
#define SSMT_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace ssmt::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

// Runs the ssmt command line (args excludes the program name). Results go
// to out, diagnostics to err. Never throws; errors map to exit codes.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Lines without trailing newlines. Throws DataError naming the path.
std::vector<std::string> ReadLines(const std::string& path);
void WriteLines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace ssmt::cli

#endif  // SSMT_TOOLS_CLI_COMMANDS_H_
