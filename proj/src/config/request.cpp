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

#include "cloudrepro/config/request.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "cloudrepro/config/overrides.hpp"
#include "cloudrepro/core/error.hpp"

namespace cloudrepro::config {

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::none: return "none";
    case Engine::spark: return "spark";
    case Engine::horovod: return "horovod";
    case Engine::dask: return "dask";
  }
  return "none";
}

Engine parse_engine(std::string_view name) {
  if (name == "none") return Engine::none;
  if (name == "spark") return Engine::spark;
  if (name == "horovod") return Engine::horovod;
  if (name == "dask") return Engine::dask;
  throw Error(ErrorCode::UnknownEngine, "bigdata_engine '" + std::string(name) +
                                            "' is not one of none, spark, horovod, dask");
}

bool ResourcesSpec::has_provider_block(std::string_view provider) const {
  if (provider == "aws") return aws.has_value();
  if (provider == "azure") return azure.has_value();
  return extras.contains("cloud." + std::string(provider));
}

int ResourcesSpec::instance_number(std::string_view provider) const {
  if (provider == "aws" && aws) return aws->instance_number;
  if (provider == "azure" && azure) return azure->instance_number;
  if (auto it = extras.find("cloud." + std::string(provider)); it != extras.end()) {
    if (auto n = it->second.find("instance_number"); n != it->second.end()) {
      try {
        return std::stoi(n->second);
      } catch (const std::exception&) {
        return 0;
      }
    }
    return 1;
  }
  return 0;
}

std::string ResourcesSpec::instance_type(std::string_view provider) const {
  if (provider == "aws" && aws) return aws->instance_type;
  if (provider == "azure" && azure) return azure->instance_type;
  if (auto it = extras.find("cloud." + std::string(provider)); it != extras.end())
    if (auto t = it->second.find("instance_type"); t != it->second.end()) return t->second;
  return {};
}

PersonalSpec redacted(PersonalSpec personal) {
  for (auto& [key, value] : personal.cloud_credentials) value = std::string(kRedactedValue);
  for (auto& [section, keys] : personal.extras)
    for (auto& [key, value] : keys)
      if (is_secret_key(key)) value = std::string(kRedactedValue);
  return personal;
}

bool is_secret_key(std::string_view key) {
  static constexpr std::array<std::string_view, 9> kMarkers = {
      "secret", "password", "passwd", "token", "access_key", "private_key", "credential", "api_key", "apikey"};
  std::string lower(key);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  return std::any_of(kMarkers.begin(), kMarkers.end(),
                     [&](std::string_view m) { return lower.find(m) != std::string::npos; });
}

bool is_locator(std::string_view value) {
  const auto sep = value.find("://");
  if (sep == std::string_view::npos || sep == 0) return false;
  const auto scheme = value.substr(0, sep);
  if (!std::islower(static_cast<unsigned char>(scheme.front()))) return false;
  for (char c : scheme)
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
          c == '.' || c == '-'))
      return false;
  const auto rest = value.substr(sep + 3);
  if (rest.empty()) return false;
  return std::none_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isspace(c) || c < 0x20; });
}

AbstractRequest apply_overrides(AbstractRequest base, const OverrideSet& overrides) {
  if (overrides.resources) base.resources = *overrides.resources;
  if (overrides.application) base.application = *overrides.application;
  base.personal = overrides.personal;
  if (overrides.target_provider) base.personal.cloud_provider = *overrides.target_provider;
  return base;
}

}  // namespace cloudrepro::config
