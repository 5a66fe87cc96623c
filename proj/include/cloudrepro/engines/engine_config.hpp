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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cloudrepro/config/request.hpp"

namespace cloudrepro::engines {

/// Ordered flag -> value pairs. Flags keep their leading dashes
/// ("--driver-memory" -> "60g"); switches without a value map to "".
/// Repeated flags are joined with a single space in order of appearance.
using EngineParameters = std::map<std::string, std::string>;

/// Splits a command line into words honouring single and double quotes.
std::vector<std::string> split_command(std::string_view command);

/// Every dashed argument of the command with its value.
EngineParameters parse_command_arguments(std::string_view command);

/// Only the arguments understood by Spark, Dask, Horovod/MPI launchers.
EngineParameters extract_engine_parameters(std::string_view command);

bool is_engine_flag(std::string_view flag);

/// A file packaged with the execution configuration.
struct ConfigArtifact {
  std::string name;  // archive-relative, e.g. "engine/spark-env.sh"
  std::string content;
  friend bool operator==(const ConfigArtifact&, const ConfigArtifact&) = default;
};

inline constexpr std::string_view kEngineParametersArtifact = "engine/parameters.ini";

/// Packages the engine parameters found on the command line (as
/// engine/parameters.ini, only when there are any) plus user-supplied engine
/// configuration files (under engine/).
std::vector<ConfigArtifact> capture_engine_config(const config::ApplicationSpec& application,
                                                  std::span<const ConfigArtifact> user_files = {});

/// Reads back engine/parameters.ini.
EngineParameters parse_engine_parameters_artifact(std::string_view content);

}  // namespace cloudrepro::engines
