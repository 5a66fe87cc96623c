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

#include "cloudrepro/caam/service_mapping.hpp"

#include <algorithm>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::caam {

std::string_view to_string(ServiceCategory category) {
  switch (category) {
    case ServiceCategory::virtual_cluster: return "virtual_cluster";
    case ServiceCategory::virtual_network: return "virtual_network";
    case ServiceCategory::container_service: return "container_service";
    case ServiceCategory::object_storage: return "object_storage";
    case ServiceCategory::database: return "database";
    case ServiceCategory::serverless: return "serverless";
    case ServiceCategory::cloud_sdk: return "cloud_sdk";
    case ServiceCategory::authentication: return "authentication";
  }
  return "unknown";
}

const ServiceMapping& ServiceMapping::standard() {
  static const ServiceMapping mapping = [] {
    ServiceMapping m;
    using C = ServiceCategory;
    auto row = [&](C c, const char* aws, const char* azure, const char* gcloud) {
      m.set(c, "aws", aws);
      m.set(c, "azure", azure);
      m.set(c, "gcloud", gcloud);
    };
    row(C::virtual_cluster, "EC2 Auto Scaling/EMR", "Virtual Machine Scale Set/HDInsight",
        "Autoscaling Groups/Dataproc");
    row(C::virtual_network, "VPN", "Virtual Network", "Virtual Private Cloud");
    row(C::container_service, "ECR", "Azure Container Registry", "Artifact Registry");
    row(C::object_storage, "S3", "Blob storage", "Firebase");
    row(C::database, "DynamoDB", "CosmosDB", "Firebase Realtime Database");
    row(C::serverless, "CloudFormation & Lambda Functions", "Deployment Manager & Azure Functions",
        "Cloud Deployment Manager & Cloud Functions");
    row(C::cloud_sdk, "Boto/Boto3", ".NET Core", "Cloud SDK");
    row(C::authentication, "AWS IAM", "Azure IAM", "Cloud IAM");
    return m;
  }();
  return mapping;
}

const std::string& ServiceMapping::lookup(ServiceCategory category, std::string_view provider) const {
  const auto it = entries_.find(std::pair{category, std::string(provider)});
  if (it == entries_.end())
    throw Error(ErrorCode::UnmappedService,
                "no " + std::string(to_string(category)) + " service for provider '" + std::string(provider) + "'");
  return it->second;
}

bool ServiceMapping::contains(ServiceCategory category, std::string_view provider) const {
  return entries_.contains(std::pair{category, std::string(provider)});
}

bool ServiceMapping::covers(std::string_view provider) const {
  return std::all_of(kAllCategories.begin(), kAllCategories.end(),
                     [&](ServiceCategory c) { return contains(c, provider); });
}

void ServiceMapping::set(ServiceCategory category, std::string provider, std::string service) {
  entries_[std::pair{category, std::move(provider)}] = std::move(service);
}

}  // namespace cloudrepro::caam
