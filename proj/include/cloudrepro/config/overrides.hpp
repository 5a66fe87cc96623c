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

#include <optional>
#include <string>

#include "cloudrepro/config/request.hpp"

namespace cloudrepro::config {

/// User-supplied replacements applied on top of a historical request.
/// Sections are replaced wholesale; personal information is always fresh.
struct OverrideSet {
  std::optional<ResourcesSpec> resources;
  std::optional<ApplicationSpec> application;
  PersonalSpec personal;
  std::optional<std::string> target_provider;
};

/// Whole-section replacement. When `target_provider` is set it also becomes
/// the personal cloud_provider. No validation happens here.
AbstractRequest apply_overrides(AbstractRequest base, const OverrideSet& overrides);

}  // namespace cloudrepro::config
