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

#include "cloudrepro/engines/security.hpp"

#include <algorithm>

namespace cloudrepro::engines {
namespace {

constexpr std::string_view kHeadGroup = "sg-head";
constexpr std::string_view kWorkerGroup = "sg-workers";
constexpr std::string_view kSingleGroup = "sg-cluster";

void allow_within(SecurityGroup& group, const std::vector<std::string>& peers) {
  for (const auto& peer : peers) {
    for (auto proto : {Protocol::tcp, Protocol::udp}) {
      group.rules.push_back({Direction::inbound, proto, peer, std::nullopt});
      group.rules.push_back({Direction::outbound, proto, peer, std::nullopt});
    }
  }
}

void allow_client_ssh(SecurityGroup& group) {
  group.rules.push_back({Direction::inbound, Protocol::tcp, std::string(kClientPeer), kSshPort});
}

}  // namespace

const SecurityGroup* SecurityPolicy::group_of(std::size_t node) const {
  for (const auto& g : groups)
    if (std::find(g.members.begin(), g.members.end(), node) != g.members.end()) return &g;
  return nullptr;
}

SecurityPolicy build_security_groups(const EngineTopology& topology, const SecurityOptions& options) {
  SecurityPolicy policy;
  const auto head = topology.head();
  if (!head) {
    SecurityGroup g{std::string(kSingleGroup), {}, {}};
    for (std::size_t i = 0; i < topology.node_count(); ++i) g.members.push_back(i);
    allow_within(g, {g.id});
    allow_client_ssh(g);
    policy.groups.push_back(std::move(g));
    return policy;
  }

  SecurityGroup head_group{std::string(kHeadGroup), {*head}, {}};
  SecurityGroup worker_group{std::string(kWorkerGroup), {}, {}};
  for (std::size_t i = 0; i < topology.node_count(); ++i)
    if (i != *head) worker_group.members.push_back(i);

  const std::vector<std::string> cluster = {head_group.id, worker_group.id};
  allow_within(head_group, cluster);
  allow_within(worker_group, cluster);
  if (topology.engine == Engine::horovod) {
    for (auto* g : {&head_group, &worker_group})
      for (const auto& peer : cluster)
        g->rules.push_back({Direction::inbound, Protocol::tcp, peer, options.horovod_ssh_port});
  }
  allow_client_ssh(head_group);

  policy.groups.push_back(std::move(head_group));
  policy.groups.push_back(std::move(worker_group));
  return policy;
}

nlohmann::json to_json(const SecurityPolicy& policy) {
  auto groups = nlohmann::json::array();
  for (const auto& g : policy.groups) {
    auto rules = nlohmann::json::array();
    for (const auto& r : g.rules) {
      nlohmann::json rule = {{"direction", r.direction == Direction::inbound ? "inbound" : "outbound"},
                             {"protocol", r.protocol == Protocol::tcp ? "tcp" : "udp"},
                             {"peer", r.peer}};
      rule["port"] = r.port ? nlohmann::json(*r.port) : nlohmann::json("all");
      rules.push_back(std::move(rule));
    }
    groups.push_back({{"id", g.id}, {"members", g.members}, {"rules", std::move(rules)}});
  }
  return groups;
}

SecurityPolicy security_policy_from_json(const nlohmann::json& j) {
  SecurityPolicy policy;
  for (const auto& g : j) {
    SecurityGroup group{g.at("id").get<std::string>(), g.at("members").get<std::vector<std::size_t>>(), {}};
    for (const auto& r : g.at("rules")) {
      SecurityRule rule;
      rule.direction = r.at("direction") == "inbound" ? Direction::inbound : Direction::outbound;
      rule.protocol = r.at("protocol") == "tcp" ? Protocol::tcp : Protocol::udp;
      rule.peer = r.at("peer").get<std::string>();
      if (r.at("port").is_number_integer()) rule.port = r.at("port").get<int>();
      group.rules.push_back(std::move(rule));
    }
    policy.groups.push_back(std::move(group));
  }
  return policy;
}

}  // namespace cloudrepro::engines
