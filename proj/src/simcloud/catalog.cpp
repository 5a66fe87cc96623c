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

#include "cloudrepro/simcloud/catalog.hpp"

#include <fstream>
#include <sstream>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::simcloud {

namespace detail {
extern const char* const kBuiltinCatalogJson;
}

using nlohmann::json;

namespace {

constexpr std::array kFixed = {UsageCategory::network, UsageCategory::container, UsageCategory::database,
                               UsageCategory::object_storage};

}  // namespace

const Catalog& Catalog::builtin() {
  static const Catalog catalog = from_json(json::parse(detail::kBuiltinCatalogJson));
  return catalog;
}

Catalog Catalog::from_json(const json& j) {
  try {
    Catalog c;
    const auto& d = j.at("delays_seconds");
    c.delays_.provision = Seconds{d.at("provision").get<std::int64_t>()};
    c.delays_.image_pull = Seconds{d.at("image_pull").get<std::int64_t>()};
    c.delays_.storage_op = Seconds{d.at("storage_op").get<std::int64_t>()};
    c.delays_.teardown = Seconds{d.at("teardown").get<std::int64_t>()};
    c.delays_.bootstrap_command = Seconds{d.at("bootstrap_command").get<std::int64_t>()};
    const auto& r = j.at("request_prices_nanodollars");
    c.request_prices_.object_put.nanodollars = r.at("object_put");
    c.request_prices_.object_get.nanodollars = r.at("object_get");
    c.request_prices_.db_write.nanodollars = r.at("db_write");
    c.request_prices_.db_read.nanodollars = r.at("db_read");
    c.request_prices_.function_invocation.nanodollars = r.at("function_invocation");
    for (const auto& [pname, p] : j.at("providers").items()) {
      ProviderCatalog pc;
      pc.quota_nodes = p.at("quota_nodes").get<int>();
      for (auto cat : kFixed)
        pc.fixed_services[cat] = HourlyPrice{p.at("fixed_services_nanodollars_per_hour")
                                                 .at(std::string(to_string(cat)))
                                                 .get<std::int64_t>()};
      for (const auto& [tname, t] : p.at("instance_types").items())
        pc.instance_types[tname] = InstanceType{
            tname, pname, NodeSpec{t.at("vcpu").get<int>(), t.at("memory_gib").get<int>(), t.at("gpu").get<int>()},
            HourlyPrice{t.at("nanodollars_per_hour").get<std::int64_t>()}};
      c.providers_[pname] = std::move(pc);
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedValue, std::string("catalog: ") + e.what());
  }
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read catalog " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_json(json::parse(ss.str()));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedValue, "catalog " + path.string() + ": " + e.what());
  }
}

json Catalog::to_json() const {
  json providers = json::object();
  for (const auto& [pname, pc] : providers_) {
    json types = json::object();
    for (const auto& [tname, t] : pc.instance_types)
      types[tname] = {{"vcpu", t.spec.vcpu},
                      {"memory_gib", t.spec.memory_gib},
                      {"gpu", t.spec.gpu},
                      {"nanodollars_per_hour", t.price.nanodollars_per_hour}};
    json fixed = json::object();
    for (const auto& [cat, price] : pc.fixed_services) fixed[std::string(to_string(cat))] = price.nanodollars_per_hour;
    providers[pname] = {
        {"quota_nodes", pc.quota_nodes}, {"instance_types", types}, {"fixed_services_nanodollars_per_hour", fixed}};
  }
  return {
      {"delays_seconds",
       {{"provision", delays_.provision.count()},
        {"image_pull", delays_.image_pull.count()},
        {"storage_op", delays_.storage_op.count()},
        {"teardown", delays_.teardown.count()},
        {"bootstrap_command", delays_.bootstrap_command.count()}}},
      {"request_prices_nanodollars",
       {{"object_put", request_prices_.object_put.nanodollars},
        {"object_get", request_prices_.object_get.nanodollars},
        {"db_write", request_prices_.db_write.nanodollars},
        {"db_read", request_prices_.db_read.nanodollars},
        {"function_invocation", request_prices_.function_invocation.nanodollars}}},
      {"providers", providers},
  };
}

std::vector<std::string> Catalog::providers() const {
  std::vector<std::string> out;
  for (const auto& [p, c] : providers_) out.push_back(p);
  return out;
}

const ProviderCatalog& Catalog::provider(std::string_view provider) const {
  auto it = providers_.find(provider);
  if (it == providers_.end())
    throw Error(ErrorCode::UnsupportedProvider, "no simulated provider '" + std::string(provider) + "'");
  return it->second;
}

ProviderCatalog& Catalog::provider(std::string_view provider) {
  return const_cast<ProviderCatalog&>(std::as_const(*this).provider(provider));
}

const InstanceType& Catalog::instance_type(std::string_view provider, std::string_view name) const {
  const auto& pc = this->provider(provider);
  auto it = pc.instance_types.find(name);
  if (it == pc.instance_types.end())
    throw Error(ErrorCode::UnknownInstanceType,
                "'" + std::string(name) + "' is not offered by " + std::string(provider));
  return it->second;
}

}  // namespace cloudrepro::simcloud
