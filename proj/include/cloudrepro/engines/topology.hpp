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

#include <json.hpp>

#include "cloudrepro/config/request.hpp"

namespace cloudrepro::engines {

using config::Engine;

enum class NodeRole { master, worker, scheduler, primary_worker, secondary_worker, standalone };

std::string_view to_string(NodeRole role);
NodeRole parse_role(std::string_view name);

/// Role of every node in a cluster; index = node index.
struct EngineTopology {
  Engine engine = Engine::none;
  std::vector<NodeRole> roles;

  std::size_t node_count() const { return roles.size(); }
  /// Node holding the coordinating role (master/scheduler/primary worker).
  /// Empty for engine none.
  std::optional<std::size_t> head() const;
  bool is_head(std::size_t node) const;

  friend bool operator==(const EngineTopology&, const EngineTopology&) = default;
};

/// Node 0 takes the head role; a single node keeps the head role and also
/// does the work. Throws Error(InvalidArgument) when node_count < 1.
EngineTopology assign_roles(Engine engine, int node_count);

NodeRole head_role(Engine engine);
NodeRole worker_role(Engine engine);

nlohmann::json to_json(const EngineTopology& topology);

}  // namespace cloudrepro::engines
