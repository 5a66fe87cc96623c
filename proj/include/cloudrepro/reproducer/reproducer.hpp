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
#include <string_view>
#include <vector>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/config/overrides.hpp"
#include "cloudrepro/config/request.hpp"
#include "cloudrepro/history/url.hpp"
#include "cloudrepro/runtime/execute.hpp"
#include "cloudrepro/runtime/runtime.hpp"
#include "cloudrepro/simcloud/world.hpp"

namespace cloudrepro::reproducer {

/// Instance types of comparable shape on two providers. Symmetric.
struct TypeEquivalence {
  std::string aws;
  std::string azure;
};
const std::vector<TypeEquivalence>& instance_type_equivalences();

/// The `to` provider's type equivalent to `type` on `from`, if one is listed.
std::optional<std::string> equivalent_instance_type(std::string_view from, std::string_view type,
                                                    std::string_view to);

/// Region on `to` paired with `region` on `from`; the target's default region
/// when no pair is listed.
std::string equivalent_region(std::string_view from, std::string_view region, std::string_view to);

/// Whole-section replacement of `historical` by `overrides`.
///
/// When the effective provider has no resources block (neither historical nor
/// overridden) one is translated from the historical provider's block: the
/// node count is kept, the instance type and region are mapped, and network
/// identifiers take provider defaults. Throws Error(InvalidMerge) when the
/// translation has no equivalent type or the result does not validate.
config::AbstractRequest merge(const config::AbstractRequest& historical, const config::OverrideSet& overrides);

/// What a reproduction reads back from history.
struct Ancestor {
  history::HistoryURL url;
  history::ExecutionRecord record;
  config::AbstractRequest request;  // personal credentials are placeholders
  std::vector<engines::ConfigArtifact> engine_files;  // user-supplied, not derived
};

/// Throws Error(MalformedURL) or Error(NotFound).
Ancestor load_ancestor(simcloud::World& world, std::string_view url);

/// fetch -> merge -> generate, without running. Throws
/// Error(UnsupportedProvider) before merging when the target has no adapter.
caam::PipelineDocument regenerate_pipeline(const Ancestor& ancestor, const config::OverrideSet& overrides,
                                           const caam::AdapterRegistry& registry);

struct Reproduction {
  history::HistoryURL ancestor_url;
  config::AbstractRequest request;
  caam::PipelineDocument document;
  runtime::ExecutionOutcome outcome;
};

/// fetch -> merge -> generate -> deploy -> run -> store. The new record's
/// `ancestor` parameter holds `url`.
Reproduction reproduce(runtime::PipelineRuntime& runtime, std::string_view url,
                       const config::OverrideSet& overrides, const caam::AdapterRegistry& registry,
                       runtime::ExecuteOptions options = {});

/// Ancestor URLs from `url` back to the original execution, nearest first.
/// Throws Error(InvalidState) if the chain revisits an execution.
std::vector<std::string> lineage(simcloud::World& world, std::string_view url);

}  // namespace cloudrepro::reproducer
