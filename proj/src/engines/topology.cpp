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

#include "cloudrepro/engines/topology.hpp"

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::engines {

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::master: return "master";
    case NodeRole::worker: return "worker";
    case NodeRole::scheduler: return "scheduler";
    case NodeRole::primary_worker: return "primary_worker";
    case NodeRole::secondary_worker: return "secondary_worker";
    case NodeRole::standalone: return "standalone";
  }
  return "standalone";
}

NodeRole parse_role(std::string_view name) {
  for (auto role : {NodeRole::master, NodeRole::worker, NodeRole::scheduler, NodeRole::primary_worker,
                    NodeRole::secondary_worker, NodeRole::standalone})
    if (to_string(role) == name) return role;
  throw Error(ErrorCode::MalformedValue, "unknown node role '" + std::string(name) + "'");
}

NodeRole head_role(Engine engine) {
  switch (engine) {
    case Engine::spark: return NodeRole::master;
    case Engine::dask: return NodeRole::scheduler;
    case Engine::horovod: return NodeRole::primary_worker;
    case Engine::none: return NodeRole::standalone;
  }
  return NodeRole::standalone;
}

NodeRole worker_role(Engine engine) {
  switch (engine) {
    case Engine::spark:
    case Engine::dask: return NodeRole::worker;
    case Engine::horovod: return NodeRole::secondary_worker;
    case Engine::none: return NodeRole::standalone;
  }
  return NodeRole::standalone;
}

EngineTopology assign_roles(Engine engine, int node_count) {
  if (node_count < 1) throw Error(ErrorCode::InvalidArgument, "node_count must be >= 1");
  EngineTopology t{engine, std::vector<NodeRole>(static_cast<std::size_t>(node_count), worker_role(engine))};
  t.roles[0] = head_role(engine);
  return t;
}

std::optional<std::size_t> EngineTopology::head() const {
  if (engine == Engine::none || roles.empty()) return std::nullopt;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == head_role(engine)) return i;
  return std::nullopt;
}

bool EngineTopology::is_head(std::size_t node) const {
  const auto h = head();
  return h && *h == node;
}

nlohmann::json to_json(const EngineTopology& topology) {
  auto nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < topology.roles.size(); ++i)
    nodes.push_back({{"node", i}, {"role", to_string(topology.roles[i])}});
  return nodes;
}

}  // namespace cloudrepro::engines
