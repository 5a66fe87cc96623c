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
#include <vector>

#include <json.hpp>

#include "cloudrepro/engines/topology.hpp"

namespace cloudrepro::engines {

enum class Direction { inbound, outbound };
enum class Protocol { tcp, udp };

/// Peer naming the client machine that submitted the pipeline.
inline constexpr std::string_view kClientPeer = "client";
inline constexpr int kSshPort = 22;
/// SSH daemon port of the Horovod containers.
inline constexpr int kDefaultHorovodSshPort = 12345;

struct SecurityRule {
  Direction direction = Direction::inbound;
  Protocol protocol = Protocol::tcp;
  /// Security group id, or kClientPeer.
  std::string peer;
  /// Single port, or all ports when empty.
  std::optional<int> port;

  friend bool operator==(const SecurityRule&, const SecurityRule&) = default;
};

struct SecurityGroup {
  std::string id;
  std::vector<std::size_t> members;
  std::vector<SecurityRule> rules;

  friend bool operator==(const SecurityGroup&, const SecurityGroup&) = default;
};

struct SecurityPolicy {
  std::vector<SecurityGroup> groups;

  const SecurityGroup* group_of(std::size_t node) const;
  friend bool operator==(const SecurityPolicy&, const SecurityPolicy&) = default;
};

struct SecurityOptions {
  int horovod_ssh_port = kDefaultHorovodSshPort;
};

/// One head group and one worker group (engine none: a single group). TCP and
/// UDP are open in both directions only among the cluster's groups; client
/// SSH is allowed only into the head group.
SecurityPolicy build_security_groups(const EngineTopology& topology, const SecurityOptions& options = {});

nlohmann::json to_json(const SecurityPolicy& policy);
SecurityPolicy security_policy_from_json(const nlohmann::json& j);

}  // namespace cloudrepro::engines
