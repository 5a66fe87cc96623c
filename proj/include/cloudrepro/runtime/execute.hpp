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
#include <vector>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/config/request.hpp"
#include "cloudrepro/engines/engine_config.hpp"
#include "cloudrepro/runtime/runtime.hpp"

namespace cloudrepro::runtime {

/// Credential values of `personal`: the [cloud_credentials] section plus any
/// secret-named key that strayed into another section.
std::vector<std::string> secret_values_of(const config::PersonalSpec& personal);

/// Builds the configuration archive (redacted) and collects secret values.
StagedExecution stage_execution(const config::AbstractRequest& request,
                                std::span<const engines::ConfigArtifact> engine_files = {});

struct ExecuteOptions {
  ExecutionMode mode = ExecutionMode::serverless;
  Seconds poll_window{10};
  std::map<std::string, std::string> extra_parameters;
};

/// generate -> deploy -> run on a runtime already attached to `world`.
ExecutionOutcome execute_request(PipelineRuntime& runtime, const config::AbstractRequest& request,
                                 const caam::AdapterRegistry& registry, const ExecuteOptions& options = {},
                                 std::span<const engines::ConfigArtifact> engine_files = {});

/// Convenience overload owning a short-lived runtime.
ExecutionOutcome execute_request(simcloud::World& world, const config::AbstractRequest& request,
                                 const caam::AdapterRegistry& registry, RuntimeOptions runtime_options,
                                 const ExecuteOptions& options = {},
                                 std::span<const engines::ConfigArtifact> engine_files = {});

}  // namespace cloudrepro::runtime
