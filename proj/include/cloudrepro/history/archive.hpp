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

#include <string>
#include <string_view>
#include <vector>

#include "cloudrepro/config/request.hpp"
#include "cloudrepro/engines/engine_config.hpp"
#include "cloudrepro/history/zip.hpp"

namespace cloudrepro::history {

inline constexpr std::string_view kConfigArchiveName = "Config.zip";
inline constexpr std::string_view kResultArchiveName = "Result.zip";
inline constexpr std::string_view kResourcesEntry = "resources.ini";
inline constexpr std::string_view kApplicationEntry = "application.ini";
inline constexpr std::string_view kPersonalEntry = "personal.ini";

struct ArchiveBundle {
  std::string config_zip;
  std::string result_zip;
  friend bool operator==(const ArchiveBundle&, const ArchiveBundle&) = default;
};

/// resources.ini, application.ini, personal.ini (canonical text, personal
/// redacted), then engine artifacts sorted by name. Nothing provider-generated.
std::string build_config_archive(const config::AbstractRequest& request,
                                 const std::vector<engines::ConfigArtifact>& engine_artifacts);

/// Output objects sorted by name.
std::string build_result_archive(std::vector<ZipEntry> outputs);

struct ConfigContents {
  std::string resources_ini;
  std::string application_ini;
  std::string personal_ini;
  std::vector<engines::ConfigArtifact> engine_artifacts;
};

/// Throws Error(ArchiveCorrupt) when one of the three request files is missing.
ConfigContents read_config_archive(std::string_view config_zip);

/// Parses the archived request. Personal credentials come back as redaction
/// placeholders.
config::AbstractRequest archived_request(const ConfigContents& contents);

/// Secret values (non-empty, not the placeholder) occurring in `bytes`.
std::vector<std::string> find_secret_values(std::string_view bytes, const std::vector<std::string>& secrets);

/// Secret-named keys of the archived personal.ini whose value is not the
/// redaction placeholder.
std::vector<std::string> unredacted_personal_keys(const ConfigContents& contents);

}  // namespace cloudrepro::history
