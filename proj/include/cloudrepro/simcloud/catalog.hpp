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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/core/money.hpp"
#include "cloudrepro/core/time.hpp"
#include "cloudrepro/simcloud/ledger.hpp"

namespace cloudrepro::simcloud {

struct NodeSpec {
  int vcpu = 0;
  int memory_gib = 0;
  int gpu = 0;
  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct InstanceType {
  std::string name;
  std::string provider;
  NodeSpec spec;
  HourlyPrice price;
};

/// Virtual-time cost of simulated operations.
struct Delays {
  Seconds provision{30};
  Seconds image_pull{10};
  Seconds storage_op{1};
  Seconds teardown{5};
  Seconds bootstrap_command{2};
  friend bool operator==(const Delays&, const Delays&) = default;
};

struct ProviderCatalog {
  std::map<std::string, InstanceType, std::less<>> instance_types;
  /// Hourly price of the per-execution network, container, database and
  /// object-storage services.
  std::map<UsageCategory, HourlyPrice> fixed_services;
  int quota_nodes = 64;
};

/// Instance types, prices and delays of the simulated providers.
class Catalog {
 public:
  /// The compiled-in copy of data/simcloud.json.
  static const Catalog& builtin();
  static Catalog from_json(const nlohmann::json& j);
  /// Throws Error(Io) or Error(MalformedValue).
  static Catalog load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  bool has_provider(std::string_view provider) const { return providers_.contains(provider); }
  std::vector<std::string> providers() const;
  const ProviderCatalog& provider(std::string_view provider) const;
  ProviderCatalog& provider(std::string_view provider);
  /// Throws Error(UnknownInstanceType).
  const InstanceType& instance_type(std::string_view provider, std::string_view name) const;

  const RequestPrices& request_prices() const { return request_prices_; }
  const Delays& delays() const { return delays_; }
  Delays& delays() { return delays_; }

 private:
  std::map<std::string, ProviderCatalog, std::less<>> providers_;
  RequestPrices request_prices_;
  Delays delays_;
};

}  // namespace cloudrepro::simcloud
