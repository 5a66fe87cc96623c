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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cloudrepro::config {

/// Parallel framework driving the analytics. The set is closed.
enum class Engine { none, spark, horovod, dask };

std::string_view to_string(Engine engine);
/// Throws Error(UnknownEngine) for anything outside the four accepted names.
Engine parse_engine(std::string_view name);

using KeyValues = std::map<std::string, std::string>;
/// Unknown keys and sections retained verbatim, keyed by section name.
using SectionExtras = std::map<std::string, KeyValues>;

struct AwsCloud {
  std::string region;
  int instance_number = 1;
  std::string subnet_id;
  std::string instance_type;
  std::string vpc_id;
  friend bool operator==(const AwsCloud&, const AwsCloud&) = default;
};

struct AzureCloud {
  std::string region;
  int instance_number = 1;
  std::string resource_group_name;
  std::string instance_type;
  friend bool operator==(const AzureCloud&, const AzureCloud&) = default;
};

struct ReproduceTarget {
  std::string reproduce_storage;   // object-store locator, e.g. s3://history-bucket
  std::string reproduce_database;  // database locator, e.g. dynamodb://executions
  friend bool operator==(const ReproduceTarget&, const ReproduceTarget&) = default;
};

struct ResourcesSpec {
  Engine bigdata_engine = Engine::none;
  std::optional<AwsCloud> aws;
  std::optional<AzureCloud> azure;
  ReproduceTarget reproduce;
  SectionExtras extras;

  /// True when a provider block exists for `provider`: the typed aws/azure
  /// blocks, or a retained `[cloud.<provider>]` section for other providers.
  bool has_provider_block(std::string_view provider) const;
  int instance_number(std::string_view provider) const;
  std::string instance_type(std::string_view provider) const;

  friend bool operator==(const ResourcesSpec&, const ResourcesSpec&) = default;
};

struct ApplicationSpec {
  std::string docker_image;
  std::vector<std::string> data_uri;
  std::string command;
  std::vector<std::string> bootstrap;
  SectionExtras extras;
  friend bool operator==(const ApplicationSpec&, const ApplicationSpec&) = default;
};

struct PersonalSpec {
  std::string cloud_provider;
  std::string key_path;
  std::string key_name;
  std::string python_runtime;
  KeyValues cloud_credentials;
  SectionExtras extras;
  friend bool operator==(const PersonalSpec&, const PersonalSpec&) = default;
};

struct AbstractRequest {
  ResourcesSpec resources;
  ApplicationSpec application;
  PersonalSpec personal;
  friend bool operator==(const AbstractRequest&, const AbstractRequest&) = default;
};

/// Placeholder written in place of every credential value that leaves the client.
inline constexpr std::string_view kRedactedValue = "<redacted>";

PersonalSpec redacted(PersonalSpec personal);

/// Key names that must only ever appear in the [cloud_credentials] section.
bool is_secret_key(std::string_view key);

/// `scheme://rest` with a lowercase alphanumeric scheme and no whitespace.
bool is_locator(std::string_view value);

}  // namespace cloudrepro::config
