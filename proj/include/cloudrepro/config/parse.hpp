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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloudrepro/config/ini.hpp"
#include "cloudrepro/config/request.hpp"

namespace cloudrepro::config {

enum class RequestFile { resources, application, personal };

/// Default values applied to missing keys of sections that are present.
struct DefaultTable {
  std::string region = "us-west-2";
  int instance_number = 1;
  std::string python_runtime = "3.8";
};

/// Adds default values for missing keys. Idempotent.
IniDocument fill_defaults(IniDocument doc, RequestFile file, const DefaultTable& defaults = {});

struct ParsedRequest {
  AbstractRequest request;
  /// Unknown keys and sections; they are retained, not rejected.
  std::vector<std::string> warnings;
};

/// Parses and validates the three request files jointly.
///
/// Throws Error with exactly one of UnknownEngine, MissingRequiredKey,
/// MalformedValue or ProviderMismatch; checks run in file order
/// (resources, application, personal) and the first failure wins.
ParsedRequest parse_abstract_request(std::string_view resources_text, std::string_view application_text,
                                     std::string_view personal_text, const DefaultTable& defaults = {});

/// Single-file parsers for reproduction overrides, where the other files come
/// from history. Cross-file checks (provider block, engine command) are left to
/// validate(); the application parser needs the engine to decide whether
/// `command` is required.
ResourcesSpec parse_resources_file(std::string_view text, std::vector<std::string>* warnings = nullptr,
                                   const DefaultTable& defaults = {});
ApplicationSpec parse_application_file(std::string_view text, Engine engine,
                                       std::vector<std::string>* warnings = nullptr);
PersonalSpec parse_personal_file(std::string_view text, std::vector<std::string>* warnings = nullptr,
                                 const DefaultTable& defaults = {});

struct Finding {
  std::string field;
  std::string message;
  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool ok() const { return findings.empty(); }
};

ValidationReport validate(const AbstractRequest& request);

struct CanonicalText {
  std::string resources;
  std::string application;
  std::string personal;
  friend bool operator==(const CanonicalText&, const CanonicalText&) = default;
};

/// Deterministic serialization: fixed section order (known sections first,
/// then retained extras by name), keys sorted within a section, `key = value`,
/// lists joined with ", ", one blank line between sections, LF endings.
CanonicalText canonical_serialize(const AbstractRequest& request);

std::string canonical_resources(const ResourcesSpec& resources);
std::string canonical_application(const ApplicationSpec& application);
std::string canonical_personal(const PersonalSpec& personal);

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

/// Overrides personal values from the environment. For every key `k` of the
/// [personal] and [cloud_credentials] sections, `CLOUDREPRO_<UPPER(k)>` wins
/// over the file value when set.
PersonalSpec apply_environment(PersonalSpec personal, const EnvLookup& lookup);
EnvLookup process_environment();

}  // namespace cloudrepro::config
