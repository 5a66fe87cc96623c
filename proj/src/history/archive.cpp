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

#include "cloudrepro/history/archive.hpp"

#include <algorithm>

#include "cloudrepro/config/ini.hpp"
#include "cloudrepro/config/parse.hpp"
#include "cloudrepro/core/error.hpp"

namespace cloudrepro::history {

std::string build_config_archive(const config::AbstractRequest& request,
                                 const std::vector<engines::ConfigArtifact>& engine_artifacts) {
  std::vector<ZipEntry> entries = {
      {std::string(kResourcesEntry), config::canonical_resources(request.resources)},
      {std::string(kApplicationEntry), config::canonical_application(request.application)},
      {std::string(kPersonalEntry), config::canonical_personal(config::redacted(request.personal))},
  };
  auto artifacts = engine_artifacts;
  std::sort(artifacts.begin(), artifacts.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  for (auto& a : artifacts) entries.push_back({std::move(a.name), std::move(a.content)});
  return write_zip(entries);
}

std::string build_result_archive(std::vector<ZipEntry> outputs) {
  std::sort(outputs.begin(), outputs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return write_zip(outputs);
}

ConfigContents read_config_archive(std::string_view config_zip) {
  ConfigContents out;
  bool seen[3] = {false, false, false};
  for (auto& e : read_zip(config_zip)) {
    if (e.name == kResourcesEntry) {
      out.resources_ini = std::move(e.bytes);
      seen[0] = true;
    } else if (e.name == kApplicationEntry) {
      out.application_ini = std::move(e.bytes);
      seen[1] = true;
    } else if (e.name == kPersonalEntry) {
      out.personal_ini = std::move(e.bytes);
      seen[2] = true;
    } else {
      out.engine_artifacts.push_back({std::move(e.name), std::move(e.bytes)});
    }
  }
  if (!(seen[0] && seen[1] && seen[2])) throw Error(ErrorCode::ArchiveCorrupt, "configuration archive lacks a request file");
  return out;
}

config::AbstractRequest archived_request(const ConfigContents& contents) {
  return config::parse_abstract_request(contents.resources_ini, contents.application_ini, contents.personal_ini)
      .request;
}

std::vector<std::string> find_secret_values(std::string_view bytes, const std::vector<std::string>& secrets) {
  std::vector<std::string> found;
  for (const auto& s : secrets) {
    if (s.empty() || s == config::kRedactedValue) continue;
    if (bytes.find(s) != std::string_view::npos) found.push_back(s);
  }
  return found;
}

std::vector<std::string> unredacted_personal_keys(const ConfigContents& contents) {
  std::vector<std::string> out;
  const auto doc = config::IniDocument::parse(contents.personal_ini, std::string(kPersonalEntry));
  for (const auto& section : doc.sections()) {
    for (const auto& entry : section.entries) {
      const bool secret = section.name == "cloud_credentials" || config::is_secret_key(entry.key);
      if (secret && !entry.value.empty() && entry.value != config::kRedactedValue)
        out.push_back(section.name + "." + entry.key);
    }
  }
  return out;
}

}  // namespace cloudrepro::history
