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

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "cloudrepro/caam/pipeline.hpp"
#include "cloudrepro/caam/service_mapping.hpp"
#include "cloudrepro/config/overrides.hpp"
#include "cloudrepro/config/request.hpp"

namespace cloudrepro::caam {

/// Provider-specific transformation from an abstract request to an
/// executable pipeline. Each adapter produces the three executable
/// documents and then assembles the pipeline from them.
class CloudAdapter {
 public:
  virtual ~CloudAdapter() = default;

  virtual std::string_view provider() const = 0;

  virtual nlohmann::json resources_document(const config::AbstractRequest& request,
                                            const ServiceMapping& mapping) const = 0;
  virtual nlohmann::json application_document(const config::ApplicationSpec& application) const = 0;
  virtual nlohmann::json personal_document(const config::PersonalSpec& personal) const = 0;
  virtual PipelineDocument assemble(ExecutableRequest executable, const config::AbstractRequest& request,
                                    const ServiceMapping& mapping) const = 0;

  PipelineDocument generate(const config::AbstractRequest& request, const ServiceMapping& mapping) const;
};

class AwsAdapter final : public CloudAdapter {
 public:
  std::string_view provider() const override { return "aws"; }
  nlohmann::json resources_document(const config::AbstractRequest& request,
                                    const ServiceMapping& mapping) const override;
  nlohmann::json application_document(const config::ApplicationSpec& application) const override;
  nlohmann::json personal_document(const config::PersonalSpec& personal) const override;
  PipelineDocument assemble(ExecutableRequest executable, const config::AbstractRequest& request,
                            const ServiceMapping& mapping) const override;
};

/// Rejects engine=spark: HDInsight offers no Docker-based Spark.
class AzureAdapter final : public CloudAdapter {
 public:
  std::string_view provider() const override { return "azure"; }
  nlohmann::json resources_document(const config::AbstractRequest& request,
                                    const ServiceMapping& mapping) const override;
  nlohmann::json application_document(const config::ApplicationSpec& application) const override;
  nlohmann::json personal_document(const config::PersonalSpec& personal) const override;
  PipelineDocument assemble(ExecutableRequest executable, const config::AbstractRequest& request,
                            const ServiceMapping& mapping) const override;
};

/// Provider id -> adapter. Registration takes an exclusive lock; lookups
/// share it.
class AdapterRegistry {
 public:
  AdapterRegistry() = default;
  AdapterRegistry(const AdapterRegistry& other);
  AdapterRegistry& operator=(const AdapterRegistry& other);

  /// Registry holding the aws and azure adapters.
  static AdapterRegistry with_builtin_adapters();

  /// Replaces any adapter already registered for `provider`.
  void register_adapter(std::string provider, std::shared_ptr<const CloudAdapter> adapter);
  void unregister_adapter(std::string_view provider);
  std::shared_ptr<const CloudAdapter> find(std::string_view provider) const;
  std::vector<std::string> providers() const;
  /// Bumped on every change.
  std::uint64_t version() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const CloudAdapter>, std::less<>> adapters_;
  std::uint64_t version_ = 0;
};

/// Dispatches to the adapter registered for the request's cloud_provider.
/// Overrides, when given, replace whole sections first. Throws
/// Error(UnsupportedProvider) for providers without an adapter.
PipelineDocument generate_pipeline(const config::AbstractRequest& request, const AdapterRegistry& registry,
                                   const ServiceMapping& mapping = ServiceMapping::standard(),
                                   const config::OverrideSet* overrides = nullptr);

/// Helpers shared by adapters.
namespace detail {
/// Secret-looking keys are replaced by the redaction placeholder when asked.
nlohmann::json extras_json(const config::SectionExtras& extras, bool redact_secrets);
nlohmann::json portable_application_document(const config::ApplicationSpec& application);
nlohmann::json service_table(const ServiceMapping& mapping, std::string_view provider);
nlohmann::json cluster_section(const config::AbstractRequest& request, std::string_view provider);
nlohmann::json personal_section(const config::PersonalSpec& personal, std::string_view provider);
PipelineDocument standard_pipeline(std::string_view provider, ExecutableRequest executable,
                                   const config::AbstractRequest& request, const ServiceMapping& mapping);
}  // namespace detail

}  // namespace cloudrepro::caam
