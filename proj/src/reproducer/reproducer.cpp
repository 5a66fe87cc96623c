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

#include "cloudrepro/reproducer/reproducer.hpp"

#include <algorithm>
#include <set>

#include "cloudrepro/config/parse.hpp"
#include "cloudrepro/core/error.hpp"
#include "cloudrepro/history/archive.hpp"
#include "cloudrepro/history/store.hpp"

namespace cloudrepro::reproducer {

namespace {

struct RegionPair {
  std::string_view aws;
  std::string_view azure;
};

constexpr RegionPair kRegionPairs[] = {
    {"us-west-2", "westus2"},
    {"us-east-1", "eastus"},
    {"eu-west-1", "northeurope"},
};

constexpr std::string_view kDefaultAwsRegion = "us-west-2";
constexpr std::string_view kDefaultAzureRegion = "westus2";
constexpr std::string_view kDefaultSubnet = "default-subnet";
constexpr std::string_view kDefaultVpc = "default-vpc";
constexpr std::string_view kDefaultResourceGroup = "cloudrepro-default-rg";

[[noreturn]] void invalid_merge(const std::string& why) { throw Error(ErrorCode::InvalidMerge, why); }

struct ProviderBlock {
  std::string region;
  int nodes = 1;
  std::string instance_type;
};

std::optional<ProviderBlock> block_of(const config::ResourcesSpec& r, std::string_view provider) {
  if (provider == "aws" && r.aws) return ProviderBlock{r.aws->region, r.aws->instance_number, r.aws->instance_type};
  if (provider == "azure" && r.azure)
    return ProviderBlock{r.azure->region, r.azure->instance_number, r.azure->instance_type};
  return std::nullopt;
}

void translate_resources(config::ResourcesSpec& resources, std::string_view from, std::string_view to) {
  const auto source = block_of(resources, from);
  if (!source) invalid_merge("no resources block for '" + std::string(to) + "' and none to translate from");
  const auto type = equivalent_instance_type(from, source->instance_type, to);
  if (!type)
    invalid_merge("instance type '" + source->instance_type + "' on " + std::string(from) + " has no listed equivalent on " +
                  std::string(to) + "; provide a resources override");
  const auto region = equivalent_region(from, source->region, to);
  if (to == "aws") {
    resources.aws = config::AwsCloud{region, source->nodes, std::string(kDefaultSubnet), *type, std::string(kDefaultVpc)};
  } else if (to == "azure") {
    resources.azure = config::AzureCloud{region, source->nodes, std::string(kDefaultResourceGroup), *type};
  } else {
    invalid_merge("no translation into provider '" + std::string(to) + "'");
  }
}

}  // namespace

const std::vector<TypeEquivalence>& instance_type_equivalences() {
  static const std::vector<TypeEquivalence> table = {
      {"c5d.large", "F2s_v2"},      {"c5d.xlarge", "F4s_v2"},     {"c5d.4xlarge", "F16s_v2"},
      {"p3.2xlarge", "NC6s_v3"},    {"p3.8xlarge", "NC24s_v3"},
  };
  return table;
}

std::optional<std::string> equivalent_instance_type(std::string_view from, std::string_view type,
                                                    std::string_view to) {
  if (from == to) return std::string(type);
  for (const auto& e : instance_type_equivalences()) {
    if (from == "aws" && to == "azure" && e.aws == type) return e.azure;
    if (from == "azure" && to == "aws" && e.azure == type) return e.aws;
  }
  return std::nullopt;
}

std::string equivalent_region(std::string_view from, std::string_view region, std::string_view to) {
  if (from == to) return std::string(region);
  for (const auto& p : kRegionPairs) {
    if (from == "aws" && to == "azure" && p.aws == region) return std::string(p.azure);
    if (from == "azure" && to == "aws" && p.azure == region) return std::string(p.aws);
  }
  return std::string(to == "aws" ? kDefaultAwsRegion : kDefaultAzureRegion);
}

config::AbstractRequest merge(const config::AbstractRequest& historical, const config::OverrideSet& overrides) {
  auto merged = config::apply_overrides(historical, overrides);
  const auto& target = merged.personal.cloud_provider;
  if (!merged.resources.has_provider_block(target)) {
    if (overrides.resources) invalid_merge("resources override has no block for provider '" + target + "'");
    translate_resources(merged.resources, historical.personal.cloud_provider, target);
  }
  if (const auto report = config::validate(merged); !report.ok()) {
    const auto& f = report.findings.front();
    invalid_merge(f.field + ": " + f.message);
  }
  return merged;
}

Ancestor load_ancestor(simcloud::World& world, std::string_view url) {
  const auto parsed = history::HistoryURL::parse(url);
  auto [record, bundle] = history::HistoryStore::fetch_execution(world, parsed);
  const auto contents = history::read_config_archive(bundle.config_zip);
  Ancestor a{parsed, std::move(record), history::archived_request(contents), {}};
  for (const auto& artifact : contents.engine_artifacts)
    if (artifact.name != engines::kEngineParametersArtifact) a.engine_files.push_back(artifact);
  return a;
}

namespace {

void require_adapter(const config::OverrideSet& overrides, const caam::AdapterRegistry& registry) {
  const auto& target = overrides.target_provider ? *overrides.target_provider : overrides.personal.cloud_provider;
  if (!registry.find(target)) throw Error(ErrorCode::UnsupportedProvider, "no adapter for provider '" + target + "'");
}

}  // namespace

caam::PipelineDocument regenerate_pipeline(const Ancestor& ancestor, const config::OverrideSet& overrides,
                                           const caam::AdapterRegistry& registry) {
  require_adapter(overrides, registry);
  return caam::generate_pipeline(merge(ancestor.request, overrides), registry);
}

Reproduction reproduce(runtime::PipelineRuntime& runtime, std::string_view url,
                       const config::OverrideSet& overrides, const caam::AdapterRegistry& registry,
                       runtime::ExecuteOptions options) {
  auto ancestor = load_ancestor(runtime.world(), url);
  require_adapter(overrides, registry);
  Reproduction r{ancestor.url, merge(ancestor.request, overrides), {}, {}};
  r.document = caam::generate_pipeline(r.request, registry);
  options.extra_parameters[std::string(history::kAncestorParameter)] = ancestor.url.to_string();
  r.outcome = runtime::execute_request(runtime, r.request, registry, options, ancestor.engine_files);
  return r;
}

std::vector<std::string> lineage(simcloud::World& world, std::string_view url) {
  std::vector<std::string> chain;
  std::set<std::string> seen{std::string(url)};
  auto current = history::HistoryStore::fetch_execution(world, url).first;
  while (true) {
    const auto it = current.parameters.find(std::string(history::kAncestorParameter));
    if (it == current.parameters.end()) return chain;
    if (!seen.insert(it->second).second) throw Error(ErrorCode::InvalidState, "lineage cycle at " + it->second);
    chain.push_back(it->second);
    current = history::HistoryStore::fetch_execution(world, it->second).first;
  }
}

}  // namespace cloudrepro::reproducer
