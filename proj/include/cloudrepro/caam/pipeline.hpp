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

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/caam/service_mapping.hpp"
#include "cloudrepro/config/request.hpp"

namespace cloudrepro::caam {

inline constexpr int kSchemaVersion = 1;

namespace function_name {
inline constexpr std::string_view software_env_setup = "software_env_setup";
inline constexpr std::string_view run_analytics = "run_analytics";
inline constexpr std::string_view export_execution = "export_execution";
inline constexpr std::string_view terminate_resources = "terminate_resources";
}  // namespace function_name

/// Lifecycle order of the four serverless functions.
inline constexpr std::array<std::string_view, 4> kFunctionOrder = {
    function_name::software_env_setup, function_name::run_analytics, function_name::export_execution,
    function_name::terminate_resources};

namespace event_name {
inline constexpr std::string_view hardware_env_ready = "HardwareEnvReady";
inline constexpr std::string_view software_env_ready = "SoftwareEnvReady";
inline constexpr std::string_view export_complete = "ExportComplete";
inline constexpr std::string_view resources_terminated = "ResourcesTerminated";
}  // namespace event_name

/// Object-key prefix under which analytics results are written.
inline constexpr std::string_view kExportPrefix = "export";
/// Placeholder in rule patterns replaced by the instance id on deployment.
inline constexpr std::string_view kInstancePlaceholder = "${instance_id}";

/// Event source of the cluster manager for one pipeline instance.
std::string cluster_manager_source(std::string_view instance_id);
/// Event source of a serverless function of one pipeline instance.
std::string function_source(std::string_view instance_id, std::string_view function);
/// Event source of an object-storage bucket.
std::string object_storage_source(std::string_view bucket);
/// `export/<instance_id>/`
std::string export_prefix(std::string_view instance_id);

enum class MatchKind { exact, prefix };

struct TriggerRule {
  /// Exact source, or a prefix when it ends with '*'.
  std::string match_source;
  std::string match_name;
  MatchKind match_kind = MatchKind::exact;
  std::string target_function;

  bool matches(std::string_view source, std::string_view name) const;
  /// Copy with kInstancePlaceholder replaced by `instance_id`.
  TriggerRule bind(std::string_view instance_id) const;

  friend bool operator==(const TriggerRule&, const TriggerRule&) = default;
};

struct FunctionBinding {
  std::string name;
  std::string handler;
  std::string runtime;
  friend bool operator==(const FunctionBinding&, const FunctionBinding&) = default;
};

struct ProvisioningDirective {
  std::string service;
  std::string region;
  std::string instance_type;
  int node_count = 1;
  config::Engine engine = config::Engine::none;
  friend bool operator==(const ProvisioningDirective&, const ProvisioningDirective&) = default;
};

/// The three generated documents: resources.json, application.json, personal.json.
struct ExecutableRequest {
  nlohmann::json resources;
  nlohmann::json application;
  nlohmann::json personal;
  friend bool operator==(const ExecutableRequest&, const ExecutableRequest&) = default;
};

struct PipelineDocument {
  int schema_version = kSchemaVersion;
  std::string provider;
  ExecutableRequest executable;
  ProvisioningDirective provisioning;
  std::vector<FunctionBinding> functions;
  std::vector<TriggerRule> rules;

  const TriggerRule* rule_for(std::string_view function) const;

  nlohmann::json to_json() const;
  static PipelineDocument from_json(const nlohmann::json& j);
  /// Sorted keys, two-space indentation, trailing newline.
  std::string canonical_text() const;

  friend bool operator==(const PipelineDocument&, const PipelineDocument&) = default;
};

/// Writes `pipeline_<provider>.json`, `resources.json`, `application.json` and
/// `personal.json` into `dir` (created if absent), each in canonical form.
/// Returns the paths in that order. Throws Error(Io) on write failure.
std::vector<std::filesystem::path> write_pipeline_files(const PipelineDocument& doc, const std::filesystem::path& dir);

/// Structural checks of a serialized pipeline document. Empty when valid.
std::vector<std::string> check_pipeline_document(const nlohmann::json& doc,
                                                 const ServiceMapping& mapping = ServiceMapping::standard());

/// Host part of a locator: "s3://bucket/key" -> "bucket".
std::string locator_host(std::string_view locator);

}  // namespace cloudrepro::caam
