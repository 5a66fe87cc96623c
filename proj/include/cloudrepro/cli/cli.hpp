// Copyright 2026 The cloudrepro Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cloudrepro/config/parse.hpp"
#include "cloudrepro/core/error.hpp"

namespace cloudrepro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailed = 1;    // the pipeline ran and ended Failed
inline constexpr int kExitUsage = 2;        // command line, request files, suites, filters
inline constexpr int kExitNotFound = 3;     // unknown or malformed history URL
inline constexpr int kExitUnsupported = 4;  // provider or engine without support
inline constexpr int kExitCloud = 5;        // rejected deployment or simulated cloud failure
inline constexpr int kExitInternal = 6;     // I/O and integrity failures

/// Total over ErrorCode.
int exit_code_for(ErrorCode code);

/// Entry point of the `cloudrepro` tool. `args` excludes the program name.
/// Run state persists under --state-dir (default $CLOUDREPRO_STATE_DIR, then
/// ./.cloudrepro) so later invocations can reproduce and query executions.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const config::EnvLookup& env = config::process_environment());

}  // namespace cloudrepro::cli
