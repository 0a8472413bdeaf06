// Copyright 2026 The qubot-sim Authors
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

#ifndef QUBOT_CLI_HPP_
#define QUBOT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qubot::cli {

/// Full CLI entry point, separated from main() so tests can drive it.
/// argv follows main() conventions (argv[0] = program name). Output streams
/// are injectable for capture. Returns the process exit code: 0 success,
/// 1 configuration/usage error, 2 numerical or I/O failure.
int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err);

/// Convenience overload over C-style argv writing to stdout/stderr.
int run(int argc, const char* const* argv);

std::string usage_text();

}  // namespace qubot::cli

#endif  // QUBOT_CLI_HPP_
