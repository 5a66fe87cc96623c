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

#include "cloudrepro/runtime/execute.hpp"

#include <algorithm>

#include "cloudrepro/history/archive.hpp"

namespace cloudrepro::runtime {

std::vector<std::string> secret_values_of(const config::PersonalSpec& personal) {
  std::vector<std::string> out;
  auto add = [&](const std::string& v) {
    if (!v.empty() && v != config::kRedactedValue && std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  };
  for (const auto& [key, value] : personal.cloud_credentials) add(value);
  for (const auto& [section, kv] : personal.extras)
    for (const auto& [key, value] : kv)
      if (config::is_secret_key(key)) add(value);
  return out;
}

StagedExecution stage_execution(const config::AbstractRequest& request,
                                std::span<const engines::ConfigArtifact> engine_files) {
  StagedExecution staged;
  staged.config_archive =
      history::build_config_archive(request, engines::capture_engine_config(request.application, engine_files));
  staged.secret_values = secret_values_of(request.personal);
  return staged;
}

ExecutionOutcome execute_request(PipelineRuntime& runtime, const config::AbstractRequest& request,
                                 const caam::AdapterRegistry& registry, const ExecuteOptions& options,
                                 std::span<const engines::ConfigArtifact> engine_files) {
  const auto doc = caam::generate_pipeline(request, registry);
  auto staged = stage_execution(request, engine_files);
  staged.extra_parameters = options.extra_parameters;
  const auto id = runtime.deploy(doc, std::move(staged)).instance_id;
  return options.mode == ExecutionMode::sdk ? runtime.run_sdk_mode(id, options.poll_window)
                                            : runtime.run_serverless(id);
}

ExecutionOutcome execute_request(simcloud::World& world, const config::AbstractRequest& request,
                                 const caam::AdapterRegistry& registry, RuntimeOptions runtime_options,
                                 const ExecuteOptions& options,
                                 std::span<const engines::ConfigArtifact> engine_files) {
  PipelineRuntime runtime(world, std::move(runtime_options));
  return execute_request(runtime, request, registry, options, engine_files);
}

}  // namespace cloudrepro::runtime
