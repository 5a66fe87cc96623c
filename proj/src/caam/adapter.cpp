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

#include "cloudrepro/caam/adapter.hpp"

#include <mutex>

#include "cloudrepro/core/error.hpp"
#include "cloudrepro/engines/engine_config.hpp"
#include "cloudrepro/engines/security.hpp"
#include "cloudrepro/engines/topology.hpp"

namespace cloudrepro::caam {

using nlohmann::json;

PipelineDocument CloudAdapter::generate(const config::AbstractRequest& request, const ServiceMapping& mapping) const {
  ExecutableRequest executable{resources_document(request, mapping), application_document(request.application),
                               personal_document(request.personal)};
  return assemble(std::move(executable), request, mapping);
}

namespace detail {

json extras_json(const config::SectionExtras& extras, bool redact_secrets) {
  json out = json::object();
  for (const auto& [section, kv] : extras) {
    json s = json::object();
    for (const auto& [k, v] : kv)
      s[k] = redact_secrets && config::is_secret_key(k) ? std::string(config::kRedactedValue) : v;
    out[section] = s;
  }
  return out;
}

json portable_application_document(const config::ApplicationSpec& application) {
  json params = json::object();
  for (const auto& [flag, value] : engines::extract_engine_parameters(application.command)) params[flag] = value;
  return {
      {"docker_image", application.docker_image},
      {"command", application.command},
      {"data_uri", application.data_uri},
      {"bootstrap", application.bootstrap},
      {"engine_parameters", params},
      {"extras", extras_json(application.extras, false)},
  };
}

json service_table(const ServiceMapping& mapping, std::string_view provider) {
  json out = json::object();
  for (auto c : kAllCategories) out[std::string(to_string(c))] = mapping.lookup(c, provider);
  return out;
}

json cluster_section(const config::AbstractRequest& request, std::string_view provider) {
  const auto& res = request.resources;
  const int nodes = res.instance_number(provider);
  const auto topology = engines::assign_roles(res.bigdata_engine, nodes);
  const engines::SecurityOptions options;
  json cluster = {
      {"engine", config::to_string(res.bigdata_engine)},
      {"instance_type", res.instance_type(provider)},
      {"node_count", nodes},
      {"topology", engines::to_json(topology)},
      {"security", engines::to_json(engines::build_security_groups(topology, options))},
  };
  if (res.bigdata_engine == config::Engine::horovod)
    cluster["horovod"] = {{"ssh_port", options.horovod_ssh_port}, {"shared_file_system", true}};
  return cluster;
}

json personal_section(const config::PersonalSpec& personal, std::string_view provider) {
  json keys = json::array();
  for (const auto& [k, v] : personal.cloud_credentials) keys.push_back(k);
  const std::string principal = personal.key_name.empty() ? "default" : personal.key_name;
  return {
      {"cloud_provider", personal.cloud_provider},
      {"key_name", personal.key_name},
      {"key_path", personal.key_path},
      {"python_runtime", personal.python_runtime},
      {"credentials", {{"source", "secret-store://" + std::string(provider) + "/" + principal}, {"keys", keys}}},
      {"extras", extras_json(personal.extras, true)},
  };
}

PipelineDocument standard_pipeline(std::string_view provider, ExecutableRequest executable,
                                   const config::AbstractRequest& request, const ServiceMapping& mapping) {
  PipelineDocument doc;
  doc.provider = std::string(provider);
  const auto& cluster = executable.resources.at("cluster");
  doc.provisioning.service = mapping.lookup(ServiceCategory::virtual_cluster, provider);
  doc.provisioning.region = executable.resources.at("region").get<std::string>();
  doc.provisioning.instance_type = cluster.at("instance_type").get<std::string>();
  doc.provisioning.node_count = cluster.at("node_count").get<int>();
  doc.provisioning.engine = request.resources.bigdata_engine;
  doc.executable = std::move(executable);

  const std::string runtime = "python" + request.personal.python_runtime;
  for (auto fn : kFunctionOrder)
    doc.functions.push_back({std::string(fn), "cloudrepro.functions." + std::string(fn), runtime});

  const std::string id(kInstancePlaceholder);
  const std::string bucket = locator_host(request.resources.reproduce.reproduce_storage);
  doc.rules = {
      {cluster_manager_source(id), std::string(event_name::hardware_env_ready), MatchKind::exact,
       std::string(function_name::software_env_setup)},
      {function_source(id, function_name::software_env_setup), std::string(event_name::software_env_ready),
       MatchKind::exact, std::string(function_name::run_analytics)},
      {object_storage_source(bucket), export_prefix(id), MatchKind::prefix,
       std::string(function_name::export_execution)},
      {function_source(id, function_name::export_execution), std::string(event_name::export_complete),
       MatchKind::exact, std::string(function_name::terminate_resources)},
  };
  return doc;
}

}  // namespace detail

namespace {

json history_section(const config::ReproduceTarget& target) {
  return {{"storage", target.reproduce_storage}, {"database", target.reproduce_database}};
}

}  // namespace

json AwsAdapter::resources_document(const config::AbstractRequest& request, const ServiceMapping& mapping) const {
  if (!request.resources.aws) throw Error(ErrorCode::ProviderMismatch, "no [cloud.aws] block in resources");
  const auto& aws = *request.resources.aws;
  return {
      {"provider", "aws"},
      {"region", aws.region},
      {"services", detail::service_table(mapping, "aws")},
      {"cluster", detail::cluster_section(request, "aws")},
      {"network", {{"vpc_id", aws.vpc_id}, {"subnet_id", aws.subnet_id}}},
      {"history", history_section(request.resources.reproduce)},
      {"extras", detail::extras_json(request.resources.extras, true)},
  };
}

json AwsAdapter::application_document(const config::ApplicationSpec& application) const {
  return detail::portable_application_document(application);
}

json AwsAdapter::personal_document(const config::PersonalSpec& personal) const {
  return detail::personal_section(personal, "aws");
}

PipelineDocument AwsAdapter::assemble(ExecutableRequest executable, const config::AbstractRequest& request,
                                      const ServiceMapping& mapping) const {
  return detail::standard_pipeline("aws", std::move(executable), request, mapping);
}

json AzureAdapter::resources_document(const config::AbstractRequest& request, const ServiceMapping& mapping) const {
  if (!request.resources.azure) throw Error(ErrorCode::ProviderMismatch, "no [cloud.azure] block in resources");
  if (request.resources.bigdata_engine == config::Engine::spark)
    throw Error(ErrorCode::UnsupportedEngineOnProvider, "spark has no container-based cluster on azure");
  const auto& az = *request.resources.azure;
  return {
      {"provider", "azure"},
      {"region", az.region},
      {"services", detail::service_table(mapping, "azure")},
      {"cluster", detail::cluster_section(request, "azure")},
      {"network", {{"resource_group_name", az.resource_group_name}}},
      {"history", history_section(request.resources.reproduce)},
      {"extras", detail::extras_json(request.resources.extras, true)},
  };
}

json AzureAdapter::application_document(const config::ApplicationSpec& application) const {
  return detail::portable_application_document(application);
}

json AzureAdapter::personal_document(const config::PersonalSpec& personal) const {
  return detail::personal_section(personal, "azure");
}

PipelineDocument AzureAdapter::assemble(ExecutableRequest executable, const config::AbstractRequest& request,
                                        const ServiceMapping& mapping) const {
  return detail::standard_pipeline("azure", std::move(executable), request, mapping);
}

AdapterRegistry::AdapterRegistry(const AdapterRegistry& other) {
  std::shared_lock lock(other.mutex_);
  adapters_ = other.adapters_;
  version_ = other.version_;
}

AdapterRegistry& AdapterRegistry::operator=(const AdapterRegistry& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  adapters_ = other.adapters_;
  ++version_;
  return *this;
}

AdapterRegistry AdapterRegistry::with_builtin_adapters() {
  AdapterRegistry r;
  r.register_adapter("aws", std::make_shared<AwsAdapter>());
  r.register_adapter("azure", std::make_shared<AzureAdapter>());
  return r;
}

void AdapterRegistry::register_adapter(std::string provider, std::shared_ptr<const CloudAdapter> adapter) {
  if (!adapter) throw Error(ErrorCode::InvalidArgument, "null adapter for " + provider);
  std::unique_lock lock(mutex_);
  adapters_[std::move(provider)] = std::move(adapter);
  ++version_;
}

void AdapterRegistry::unregister_adapter(std::string_view provider) {
  std::unique_lock lock(mutex_);
  if (auto it = adapters_.find(provider); it != adapters_.end()) {
    adapters_.erase(it);
    ++version_;
  }
}

std::shared_ptr<const CloudAdapter> AdapterRegistry::find(std::string_view provider) const {
  std::shared_lock lock(mutex_);
  auto it = adapters_.find(provider);
  return it == adapters_.end() ? nullptr : it->second;
}

std::vector<std::string> AdapterRegistry::providers() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [p, a] : adapters_) out.push_back(p);
  return out;
}

std::uint64_t AdapterRegistry::version() const {
  std::shared_lock lock(mutex_);
  return version_;
}

PipelineDocument generate_pipeline(const config::AbstractRequest& request, const AdapterRegistry& registry,
                                   const ServiceMapping& mapping, const config::OverrideSet* overrides) {
  const config::AbstractRequest effective = overrides ? config::apply_overrides(request, *overrides) : request;
  const auto& provider = effective.personal.cloud_provider;
  auto adapter = registry.find(provider);
  if (!adapter) throw Error(ErrorCode::UnsupportedProvider, "no adapter registered for provider '" + provider + "'");
  return adapter->generate(effective, mapping);
}

}  // namespace cloudrepro::caam
