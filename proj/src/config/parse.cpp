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

#include "cloudrepro/config/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::config {
namespace {

const std::set<std::string, std::less<>> kAwsKeys = {"region", "instance_number", "subnet_id", "instance_type",
                                                      "vpc_id"};
const std::set<std::string, std::less<>> kAzureKeys = {"region", "instance_number", "resource_group_name",
                                                        "instance_type"};
const std::set<std::string, std::less<>> kReproduceKeys = {"reproduce_storage", "reproduce_database"};
const std::set<std::string, std::less<>> kResourcesKeys = {"bigdata_engine"};
const std::set<std::string, std::less<>> kApplicationKeys = {"docker_image", "data_uri", "command", "bootstrap"};
const std::set<std::string, std::less<>> kPersonalKeys = {"cloud_provider", "key_path", "key_name",
                                                          "python_runtime"};

[[noreturn]] void missing(std::string_view file, std::string_view section, std::string_view key) {
  throw Error(ErrorCode::MissingRequiredKey,
              std::string(file) + ": [" + std::string(section) + "] requires '" + std::string(key) + "'");
}

[[noreturn]] void malformed(std::string_view file, std::string_view section, std::string_view key,
                            const std::string& why) {
  throw Error(ErrorCode::MalformedValue,
              std::string(file) + ": [" + std::string(section) + "] " + std::string(key) + ": " + why);
}

class SectionReader {
 public:
  SectionReader(std::string_view file, const IniSection& section) : file_(file), section_(section) {}

  std::string required(std::string_view key) const {
    const auto* e = section_.find(key);
    if (e == nullptr) missing(file_, section_.name, key);
    if (e->value.empty()) malformed(file_, section_.name, key, "must not be empty");
    return e->value;
  }

  std::optional<std::string> optional(std::string_view key) const {
    const auto* e = section_.find(key);
    if (e == nullptr) return std::nullopt;
    return e->value;
  }

  int positive_int(std::string_view key) const {
    const auto text = required(key);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      malformed(file_, section_.name, key, "'" + text + "' is not an integer");
    if (value < 1) malformed(file_, section_.name, key, "instance_number must be >= 1");
    return value;
  }

  std::string locator(std::string_view key) const {
    auto value = required(key);
    if (!is_locator(value)) malformed(file_, section_.name, key, "'" + value + "' is not a scheme://locator");
    return value;
  }

 private:
  std::string_view file_;
  const IniSection& section_;
};

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

bool is_provider_id(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '-';
  });
}

/// Moves keys outside `known` into `extras[section]` and records warnings.
void retain_unknown(std::string_view file, const IniSection& section,
                    const std::set<std::string, std::less<>>* known, SectionExtras& extras,
                    std::vector<std::string>& warnings) {
  // Secrets travel only in [cloud_credentials]; anywhere else they would leak
  // into stored artifacts.
  for (const auto& e : section.entries)
    if ((known == nullptr || !known->contains(e.key)) && is_secret_key(e.key))
      malformed(file, section.name, e.key, "credentials belong in [cloud_credentials]");
  if (known == nullptr) {
    auto& kv = extras[section.name];
    for (const auto& e : section.entries) kv[e.key] = e.value;
    warnings.push_back(std::string(file) + ": unknown section [" + section.name + "] retained");
    return;
  }
  for (const auto& e : section.entries) {
    if (known->contains(e.key)) continue;
    extras[section.name][e.key] = e.value;
    warnings.push_back(std::string(file) + ": unknown key '" + e.key + "' in [" + section.name + "] retained");
  }
}

ResourcesSpec parse_resources(const IniDocument& doc, std::vector<std::string>& warnings) {
  constexpr std::string_view file = "resources.ini";
  ResourcesSpec spec;

  const auto* res = doc.find("resources");
  if (res == nullptr) missing(file, "resources", "bigdata_engine");
  spec.bigdata_engine = parse_engine(SectionReader(file, *res).required("bigdata_engine"));

  if (const auto* s = doc.find("cloud.aws")) {
    SectionReader r(file, *s);
    spec.aws = AwsCloud{r.required("region"), r.positive_int("instance_number"), r.required("subnet_id"),
                        r.required("instance_type"), r.required("vpc_id")};
  }
  if (const auto* s = doc.find("cloud.azure")) {
    SectionReader r(file, *s);
    spec.azure = AzureCloud{r.required("region"), r.positive_int("instance_number"),
                            r.required("resource_group_name"), r.required("instance_type")};
  }

  for (const auto& s : doc.sections()) {
    if (s.name.rfind("cloud.", 0) == 0 && s.name != "cloud.aws" && s.name != "cloud.azure") {
      if (!is_provider_id(s.name.substr(6))) malformed(file, s.name, "section", "invalid provider id");
      if (s.find("instance_number") != nullptr) SectionReader(file, s).positive_int("instance_number");
    }
  }

  const auto* rep = doc.find("reproduce");
  if (rep == nullptr) missing(file, "reproduce", "reproduce_storage");
  {
    SectionReader r(file, *rep);
    spec.reproduce = ReproduceTarget{r.locator("reproduce_storage"), r.locator("reproduce_database")};
  }

  for (const auto& s : doc.sections()) {
    const std::set<std::string, std::less<>>* known = nullptr;
    if (s.name == "resources") known = &kResourcesKeys;
    else if (s.name == "cloud.aws") known = &kAwsKeys;
    else if (s.name == "cloud.azure") known = &kAzureKeys;
    else if (s.name == "reproduce") known = &kReproduceKeys;
    retain_unknown(file, s, known, spec.extras, warnings);
  }

  const bool any_block = spec.aws || spec.azure ||
                         std::any_of(spec.extras.begin(), spec.extras.end(),
                                     [](const auto& kv) { return kv.first.rfind("cloud.", 0) == 0; });
  if (!any_block) missing(file, "cloud.<provider>", "at least one provider section");
  return spec;
}

ApplicationSpec parse_application(const IniDocument& doc, Engine engine, std::vector<std::string>& warnings) {
  constexpr std::string_view file = "application.ini";
  ApplicationSpec spec;
  const auto* app = doc.find("application");
  if (app == nullptr) missing(file, "application", "docker_image");
  SectionReader r(file, *app);

  spec.docker_image = r.required("docker_image");
  if (has_whitespace(spec.docker_image)) malformed(file, "application", "docker_image", "contains whitespace");

  const auto data = r.optional("data_uri");
  if (!data) missing(file, "application", "data_uri");
  spec.data_uri = split_list(*data);
  for (const auto& uri : spec.data_uri)
    if (!is_locator(uri)) malformed(file, "application", "data_uri", "'" + uri + "' is not a scheme://locator");

  if (engine != Engine::none) {
    spec.command = r.required("command");
  } else if (auto cmd = r.optional("command")) {
    spec.command = *cmd;
  }
  if (auto boot = r.optional("bootstrap")) spec.bootstrap = split_list(*boot);

  for (const auto& s : doc.sections())
    retain_unknown(file, s, s.name == "application" ? &kApplicationKeys : nullptr, spec.extras, warnings);
  return spec;
}

PersonalSpec parse_personal(const IniDocument& doc, std::vector<std::string>& warnings) {
  constexpr std::string_view file = "personal.ini";
  PersonalSpec spec;
  const auto* p = doc.find("personal");
  if (p == nullptr) missing(file, "personal", "cloud_provider");
  SectionReader r(file, *p);
  spec.cloud_provider = r.required("cloud_provider");
  if (!is_provider_id(spec.cloud_provider))
    malformed(file, "personal", "cloud_provider", "'" + spec.cloud_provider + "' is not a lowercase provider id");
  spec.key_path = r.required("key_path");
  spec.key_name = r.required("key_name");
  spec.python_runtime = r.required("python_runtime");

  if (const auto* creds = doc.find("cloud_credentials"))
    for (const auto& e : creds->entries) spec.cloud_credentials[e.key] = e.value;

  for (const auto& s : doc.sections()) {
    if (s.name == "cloud_credentials") continue;
    retain_unknown(file, s, s.name == "personal" ? &kPersonalKeys : nullptr, spec.extras, warnings);
  }
  return spec;
}

void write_section(std::ostringstream& out, bool& first, std::string_view name, const KeyValues& keys) {
  if (!first) out << '\n';
  first = false;
  out << '[' << name << "]\n";
  for (const auto& [k, v] : keys) {
    out << k << " =";
    if (!v.empty()) out << ' ' << v;
    out << '\n';
  }
}

KeyValues merged(KeyValues known, const SectionExtras& extras, const std::string& section) {
  if (auto it = extras.find(section); it != extras.end())
    for (const auto& [k, v] : it->second) known.emplace(k, v);
  return known;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

void write_extra_sections(std::ostringstream& out, bool& first, const SectionExtras& extras,
                          std::initializer_list<std::string_view> known) {
  for (const auto& [name, keys] : extras) {
    if (std::find(known.begin(), known.end(), name) != known.end()) continue;
    write_section(out, first, name, keys);
  }
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return c == '.' || c == '-' ? '_' : static_cast<char>(std::toupper(c));
  });
  return out;
}

}  // namespace

IniDocument fill_defaults(IniDocument doc, RequestFile file, const DefaultTable& defaults) {
  const auto n = std::to_string(defaults.instance_number);
  switch (file) {
    case RequestFile::resources:
      for (std::string_view name : {"cloud.aws", "cloud.azure"}) {
        if (auto* s = doc.find(name)) {
          s->set_default("region", defaults.region);
          s->set_default("instance_number", n);
        }
      }
      break;
    case RequestFile::application:
      break;
    case RequestFile::personal:
      if (auto* s = doc.find("personal")) s->set_default("python_runtime", defaults.python_runtime);
      break;
  }
  return doc;
}

ParsedRequest parse_abstract_request(std::string_view resources_text, std::string_view application_text,
                                     std::string_view personal_text, const DefaultTable& defaults) {
  ParsedRequest out;
  const auto res_doc =
      fill_defaults(IniDocument::parse(resources_text, "resources.ini"), RequestFile::resources, defaults);
  const auto app_doc =
      fill_defaults(IniDocument::parse(application_text, "application.ini"), RequestFile::application, defaults);
  const auto per_doc =
      fill_defaults(IniDocument::parse(personal_text, "personal.ini"), RequestFile::personal, defaults);

  out.request.resources = parse_resources(res_doc, out.warnings);
  out.request.application = parse_application(app_doc, out.request.resources.bigdata_engine, out.warnings);
  out.request.personal = parse_personal(per_doc, out.warnings);

  const auto& provider = out.request.personal.cloud_provider;
  if (!out.request.resources.has_provider_block(provider))
    throw Error(ErrorCode::ProviderMismatch,
                "personal.ini names provider '" + provider + "' but resources.ini has no [cloud." + provider + "]");
  return out;
}

ResourcesSpec parse_resources_file(std::string_view text, std::vector<std::string>* warnings,
                                   const DefaultTable& defaults) {
  std::vector<std::string> w;
  auto spec = parse_resources(
      fill_defaults(IniDocument::parse(text, "resources.ini"), RequestFile::resources, defaults), w);
  if (warnings) warnings->insert(warnings->end(), w.begin(), w.end());
  return spec;
}

ApplicationSpec parse_application_file(std::string_view text, Engine engine, std::vector<std::string>* warnings) {
  std::vector<std::string> w;
  auto spec = parse_application(IniDocument::parse(text, "application.ini"), engine, w);
  if (warnings) warnings->insert(warnings->end(), w.begin(), w.end());
  return spec;
}

PersonalSpec parse_personal_file(std::string_view text, std::vector<std::string>* warnings,
                                 const DefaultTable& defaults) {
  std::vector<std::string> w;
  auto spec = parse_personal(
      fill_defaults(IniDocument::parse(text, "personal.ini"), RequestFile::personal, defaults), w);
  if (warnings) warnings->insert(warnings->end(), w.begin(), w.end());
  return spec;
}

ValidationReport validate(const AbstractRequest& req) {
  ValidationReport report;
  auto add = [&](std::string field, std::string message) {
    report.findings.push_back({std::move(field), std::move(message)});
  };
  auto non_empty = [&](const std::string& field, const std::string& value) {
    if (value.empty()) add(field, field + " must not be empty");
  };

  const auto& r = req.resources;
  if (r.aws) {
    non_empty("cloud.aws.region", r.aws->region);
    if (r.aws->instance_number < 1) add("cloud.aws.instance_number", "instance_number must be >= 1");
    non_empty("cloud.aws.subnet_id", r.aws->subnet_id);
    non_empty("cloud.aws.instance_type", r.aws->instance_type);
    non_empty("cloud.aws.vpc_id", r.aws->vpc_id);
  }
  if (r.azure) {
    non_empty("cloud.azure.region", r.azure->region);
    if (r.azure->instance_number < 1) add("cloud.azure.instance_number", "instance_number must be >= 1");
    non_empty("cloud.azure.resource_group_name", r.azure->resource_group_name);
    non_empty("cloud.azure.instance_type", r.azure->instance_type);
  }
  const bool any_block = r.aws || r.azure ||
                         std::any_of(r.extras.begin(), r.extras.end(),
                                     [](const auto& kv) { return kv.first.rfind("cloud.", 0) == 0; });
  if (!any_block) add("resources", "at least one provider section is required");
  if (!is_locator(r.reproduce.reproduce_storage))
    add("reproduce.reproduce_storage", "reproduce_storage must be a scheme://locator");
  if (!is_locator(r.reproduce.reproduce_database))
    add("reproduce.reproduce_database", "reproduce_database must be a scheme://locator");

  const auto& a = req.application;
  non_empty("application.docker_image", a.docker_image);
  if (has_whitespace(a.docker_image)) add("application.docker_image", "docker_image contains whitespace");
  for (const auto& uri : a.data_uri)
    if (!is_locator(uri)) add("application.data_uri", "'" + uri + "' is not a scheme://locator");
  if (r.bigdata_engine != Engine::none && a.command.empty())
    add("application.command", "command is required when bigdata_engine is not none");

  const auto& p = req.personal;
  non_empty("personal.cloud_provider", p.cloud_provider);
  non_empty("personal.key_path", p.key_path);
  non_empty("personal.key_name", p.key_name);
  non_empty("personal.python_runtime", p.python_runtime);
  if (!p.cloud_provider.empty() && !r.has_provider_block(p.cloud_provider))
    add("personal.cloud_provider", "no resources section for provider '" + p.cloud_provider + "'");

  auto scan = [&](std::string_view file, const SectionExtras& extras) {
    for (const auto& [section, keys] : extras)
      for (const auto& [key, value] : keys)
        if (is_secret_key(key))
          add(std::string(file) + ":" + section + "." + key, "credentials outside personal section");
  };
  scan("resources.ini", r.extras);
  scan("application.ini", a.extras);
  scan("personal.ini", p.extras);
  return report;
}

std::string canonical_resources(const ResourcesSpec& r) {
  std::ostringstream out;
  bool first = true;
  write_section(out, first, "resources",
                merged({{"bigdata_engine", std::string(to_string(r.bigdata_engine))}}, r.extras, "resources"));
  if (r.aws) {
    write_section(out, first, "cloud.aws",
                  merged({{"region", r.aws->region},
                          {"instance_number", std::to_string(r.aws->instance_number)},
                          {"subnet_id", r.aws->subnet_id},
                          {"instance_type", r.aws->instance_type},
                          {"vpc_id", r.aws->vpc_id}},
                         r.extras, "cloud.aws"));
  }
  if (r.azure) {
    write_section(out, first, "cloud.azure",
                  merged({{"region", r.azure->region},
                          {"instance_number", std::to_string(r.azure->instance_number)},
                          {"resource_group_name", r.azure->resource_group_name},
                          {"instance_type", r.azure->instance_type}},
                         r.extras, "cloud.azure"));
  }
  write_section(out, first, "reproduce",
                merged({{"reproduce_storage", r.reproduce.reproduce_storage},
                        {"reproduce_database", r.reproduce.reproduce_database}},
                       r.extras, "reproduce"));
  write_extra_sections(out, first, r.extras, {"resources", "cloud.aws", "cloud.azure", "reproduce"});
  return out.str();
}

std::string canonical_application(const ApplicationSpec& a) {
  std::ostringstream out;
  bool first = true;
  KeyValues keys{{"docker_image", a.docker_image}, {"data_uri", join_list(a.data_uri)}};
  if (!a.command.empty()) keys["command"] = a.command;
  if (!a.bootstrap.empty()) keys["bootstrap"] = join_list(a.bootstrap);
  write_section(out, first, "application", merged(std::move(keys), a.extras, "application"));
  write_extra_sections(out, first, a.extras, {"application"});
  return out.str();
}

std::string canonical_personal(const PersonalSpec& p) {
  std::ostringstream out;
  bool first = true;
  write_section(out, first, "personal",
                merged({{"cloud_provider", p.cloud_provider},
                        {"key_path", p.key_path},
                        {"key_name", p.key_name},
                        {"python_runtime", p.python_runtime}},
                       p.extras, "personal"));
  if (!p.cloud_credentials.empty()) write_section(out, first, "cloud_credentials", p.cloud_credentials);
  write_extra_sections(out, first, p.extras, {"personal", "cloud_credentials"});
  return out.str();
}

CanonicalText canonical_serialize(const AbstractRequest& req) {
  return {canonical_resources(req.resources), canonical_application(req.application),
          canonical_personal(req.personal)};
}

PersonalSpec apply_environment(PersonalSpec personal, const EnvLookup& lookup) {
  auto override_value = [&](std::string_view key, std::string& value) {
    if (auto v = lookup("CLOUDREPRO_" + upper(key))) value = *v;
  };
  override_value("cloud_provider", personal.cloud_provider);
  override_value("key_path", personal.key_path);
  override_value("key_name", personal.key_name);
  override_value("python_runtime", personal.python_runtime);
  for (auto& [key, value] : personal.cloud_credentials) override_value(key, value);
  return personal;
}

EnvLookup process_environment() {
  return [](std::string_view name) -> std::optional<std::string> {
    if (const char* v = std::getenv(std::string(name).c_str())) return std::string(v);
    return std::nullopt;
  };
}

}  // namespace cloudrepro::config
