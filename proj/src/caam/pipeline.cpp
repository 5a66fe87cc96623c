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

#include "cloudrepro/caam/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::caam {

using nlohmann::json;

std::string cluster_manager_source(std::string_view instance_id) {
  return "cluster-manager/" + std::string(instance_id);
}

std::string function_source(std::string_view instance_id, std::string_view function) {
  return "function/" + std::string(instance_id) + "/" + std::string(function);
}

std::string object_storage_source(std::string_view bucket) { return "object-storage/" + std::string(bucket); }

std::string export_prefix(std::string_view instance_id) {
  return std::string(kExportPrefix) + "/" + std::string(instance_id) + "/";
}

bool TriggerRule::matches(std::string_view source, std::string_view name) const {
  if (match_kind == MatchKind::exact) {
    if (name != match_name) return false;
  } else if (!name.starts_with(match_name)) {
    return false;
  }
  if (!match_source.empty() && match_source.back() == '*')
    return source.starts_with(std::string_view(match_source).substr(0, match_source.size() - 1));
  return source == match_source;
}

namespace {

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
  for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size()))
    text.replace(pos, from.size(), to);
  return text;
}

std::string_view to_string(MatchKind kind) { return kind == MatchKind::exact ? "exact" : "prefix"; }

MatchKind parse_match_kind(const std::string& s) {
  if (s == "exact") return MatchKind::exact;
  if (s == "prefix") return MatchKind::prefix;
  throw Error(ErrorCode::MalformedValue, "unknown match kind '" + s + "'");
}

}  // namespace

TriggerRule TriggerRule::bind(std::string_view instance_id) const {
  TriggerRule bound = *this;
  bound.match_source = replace_all(match_source, kInstancePlaceholder, instance_id);
  bound.match_name = replace_all(match_name, kInstancePlaceholder, instance_id);
  return bound;
}

const TriggerRule* PipelineDocument::rule_for(std::string_view function) const {
  for (const auto& r : rules)
    if (r.target_function == function) return &r;
  return nullptr;
}

json PipelineDocument::to_json() const {
  json functions_j = json::array();
  for (const auto& f : functions)
    functions_j.push_back({{"name", f.name}, {"handler", f.handler}, {"runtime", f.runtime}});
  json rules_j = json::array();
  for (const auto& r : rules)
    rules_j.push_back({{"source", r.match_source},
                       {"event", r.match_name},
                       {"match", to_string(r.match_kind)},
                       {"target", r.target_function}});
  return {
      {"schema_version", schema_version},
      {"provider", provider},
      {"executable",
       {{"resources", executable.resources},
        {"application", executable.application},
        {"personal", executable.personal}}},
      {"provisioning",
       {{"service", provisioning.service},
        {"region", provisioning.region},
        {"instance_type", provisioning.instance_type},
        {"node_count", provisioning.node_count},
        {"engine", config::to_string(provisioning.engine)}}},
      {"functions", functions_j},
      {"rules", rules_j},
  };
}

PipelineDocument PipelineDocument::from_json(const json& j) {
  try {
    PipelineDocument d;
    d.schema_version = j.at("schema_version").get<int>();
    d.provider = j.at("provider").get<std::string>();
    const auto& ex = j.at("executable");
    d.executable = {ex.at("resources"), ex.at("application"), ex.at("personal")};
    const auto& p = j.at("provisioning");
    d.provisioning.service = p.at("service").get<std::string>();
    d.provisioning.region = p.at("region").get<std::string>();
    d.provisioning.instance_type = p.at("instance_type").get<std::string>();
    d.provisioning.node_count = p.at("node_count").get<int>();
    d.provisioning.engine = config::parse_engine(p.at("engine").get<std::string>());
    for (const auto& f : j.at("functions"))
      d.functions.push_back({f.at("name").get<std::string>(), f.at("handler").get<std::string>(),
                             f.at("runtime").get<std::string>()});
    for (const auto& r : j.at("rules"))
      d.rules.push_back({r.at("source").get<std::string>(), r.at("event").get<std::string>(),
                         parse_match_kind(r.at("match").get<std::string>()), r.at("target").get<std::string>()});
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedValue, std::string("pipeline document: ") + e.what());
  }
}

std::string PipelineDocument::canonical_text() const { return to_json().dump(2) + "\n"; }

std::vector<std::filesystem::path> write_pipeline_files(const PipelineDocument& doc, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  const std::pair<std::string, std::string> files[] = {
      {"pipeline_" + doc.provider + ".json", doc.canonical_text()},
      {"resources.json", doc.executable.resources.dump(2) + "\n"},
      {"application.json", doc.executable.application.dump(2) + "\n"},
      {"personal.json", doc.executable.personal.dump(2) + "\n"},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, text] : files) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

namespace {

struct CausalLink {
  std::string_view function;
  std::string_view event;
  MatchKind kind;
};

// Each function is triggered by the completion of the step before it; the
// first by the cluster manager, which runs provisioning.
constexpr std::array<CausalLink, 4> kChain = {{
    {function_name::software_env_setup, event_name::hardware_env_ready, MatchKind::exact},
    {function_name::run_analytics, event_name::software_env_ready, MatchKind::exact},
    {function_name::export_execution, kExportPrefix, MatchKind::prefix},
    {function_name::terminate_resources, event_name::export_complete, MatchKind::exact},
}};

void collect_strings(const json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    out.push_back(j.get<std::string>());
  } else if (j.is_structured()) {
    for (const auto& v : j) collect_strings(v, out);
  }
}

}  // namespace

std::vector<std::string> check_pipeline_document(const json& doc, const ServiceMapping& mapping) {
  std::vector<std::string> problems;
  auto require = [&](const json& obj, const char* key, json::value_t type, const std::string& where) -> bool {
    if (!obj.is_object() || !obj.contains(key)) {
      problems.push_back(where + ": missing '" + key + "'");
      return false;
    }
    const auto actual = obj.at(key).type();
    const bool numeric = type == json::value_t::number_integer &&
                         (actual == json::value_t::number_integer || actual == json::value_t::number_unsigned);
    if (actual != type && !numeric) {
      problems.push_back(where + ": '" + key + "' has the wrong type");
      return false;
    }
    return true;
  };

  if (!doc.is_object()) return {"document is not an object"};
  if (require(doc, "schema_version", json::value_t::number_integer, "document") &&
      doc["schema_version"].get<int>() != kSchemaVersion)
    problems.push_back("document: unsupported schema_version");
  std::string provider;
  if (require(doc, "provider", json::value_t::string, "document")) provider = doc["provider"];
  if (provider.empty()) problems.push_back("document: empty provider");

  if (require(doc, "executable", json::value_t::object, "document")) {
    for (const char* part : {"resources", "application", "personal"})
      require(doc["executable"], part, json::value_t::object, "executable");
    const auto& ex = doc["executable"];
    if (ex.contains("resources") && ex["resources"].is_object() && ex["resources"].contains("services")) {
      std::vector<std::string> names;
      collect_strings(ex["resources"]["services"], names);
      for (const auto& n : names) {
        bool valid = false;
        for (auto c : kAllCategories)
          if (mapping.contains(c, provider) && mapping.lookup(c, provider) == n) valid = true;
        if (!valid) problems.push_back("resources: service '" + n + "' is not offered by " + provider);
      }
    } else {
      problems.push_back("resources: missing 'services'");
    }
  }

  if (require(doc, "provisioning", json::value_t::object, "document")) {
    const auto& p = doc["provisioning"];
    for (const char* key : {"service", "region", "instance_type", "engine"})
      require(p, key, json::value_t::string, "provisioning");
    if (require(p, "node_count", json::value_t::number_integer, "provisioning") && p["node_count"].get<int>() < 1)
      problems.push_back("provisioning: node_count must be positive");
    if (p.contains("service") && p["service"].is_string() && mapping.contains(ServiceCategory::virtual_cluster, provider) &&
        p["service"] != mapping.lookup(ServiceCategory::virtual_cluster, provider))
      problems.push_back("provisioning: service is not the provider's virtual cluster service");
  }

  std::vector<std::string> fn_names;
  if (require(doc, "functions", json::value_t::array, "document")) {
    for (const auto& f : doc["functions"]) {
      if (require(f, "name", json::value_t::string, "function")) fn_names.push_back(f["name"]);
      require(f, "handler", json::value_t::string, "function");
      require(f, "runtime", json::value_t::string, "function");
    }
    if (fn_names.size() != kFunctionOrder.size() ||
        !std::equal(fn_names.begin(), fn_names.end(), kFunctionOrder.begin()))
      problems.push_back("functions: expected software_env_setup, run_analytics, export_execution, terminate_resources");
  }

  if (require(doc, "rules", json::value_t::array, "document")) {
    std::map<std::string, int> targets;
    std::map<std::string, json> rule_of;
    for (const auto& r : doc["rules"]) {
      bool ok = true;
      for (const char* key : {"source", "event", "match", "target"})
        ok = require(r, key, json::value_t::string, "rule") && ok;
      if (!ok) continue;
      const std::string target = r["target"];
      ++targets[target];
      rule_of[target] = r;
      if (std::find(fn_names.begin(), fn_names.end(), target) == fn_names.end())
        problems.push_back("rule targets unknown function '" + target + "'");
    }
    for (auto fn : kFunctionOrder) {
      const auto it = targets.find(std::string(fn));
      if (it == targets.end() || it->second != 1) {
        problems.push_back("function '" + std::string(fn) + "' must have exactly one trigger rule");
        continue;
      }
    }
    for (const auto& link : kChain) {
      const auto it = rule_of.find(std::string(link.function));
      if (it == rule_of.end()) continue;
      const auto& r = it->second;
      const bool kind_ok = r["match"] == (link.kind == MatchKind::exact ? "exact" : "prefix");
      const std::string event = r["event"];
      const bool event_ok = link.kind == MatchKind::exact ? event == link.event : event.starts_with(link.event);
      if (!kind_ok || !event_ok)
        problems.push_back("rule for '" + std::string(link.function) + "' breaks the lifecycle order");
    }
  }
  return problems;
}

std::string locator_host(std::string_view locator) {
  auto pos = locator.find("://");
  std::string_view rest = pos == std::string_view::npos ? locator : locator.substr(pos + 3);
  return std::string(rest.substr(0, rest.find('/')));
}

}  // namespace cloudrepro::caam
