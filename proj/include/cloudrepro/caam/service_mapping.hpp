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
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace cloudrepro::caam {

enum class ServiceCategory {
  virtual_cluster,
  virtual_network,
  container_service,
  object_storage,
  database,
  serverless,
  cloud_sdk,
  authentication,
};

inline constexpr std::array<ServiceCategory, 8> kAllCategories = {
    ServiceCategory::virtual_cluster, ServiceCategory::virtual_network, ServiceCategory::container_service,
    ServiceCategory::object_storage,  ServiceCategory::database,        ServiceCategory::serverless,
    ServiceCategory::cloud_sdk,       ServiceCategory::authentication};

std::string_view to_string(ServiceCategory category);

/// Which managed service plays each role on each provider.
class ServiceMapping {
 public:
  /// AWS, Azure and Google Cloud services used for portable analytics.
  static const ServiceMapping& standard();

  ServiceMapping() = default;

  /// Throws Error(UnmappedService) when the pair is absent.
  const std::string& lookup(ServiceCategory category, std::string_view provider) const;
  bool contains(ServiceCategory category, std::string_view provider) const;
  /// True when all eight categories are mapped for the provider.
  bool covers(std::string_view provider) const;

  void set(ServiceCategory category, std::string provider, std::string service);

  const std::map<std::pair<ServiceCategory, std::string>, std::string, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::pair<ServiceCategory, std::string>, std::string, std::less<>> entries_;
};

}  // namespace cloudrepro::caam
