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

#include "cloudrepro/simcloud/world.hpp"

#include <algorithm>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::simcloud {

using nlohmann::json;

namespace {

constexpr std::string_view kHardwareEnvReady = "HardwareEnvReady";
constexpr std::string_view kResourcesTerminated = "ResourcesTerminated";

}  // namespace

std::string_view to_string(ClusterState state) {
  switch (state) {
    case ClusterState::Provisioning: return "Provisioning";
    case ClusterState::Ready: return "Ready";
    case ClusterState::Terminated: return "Terminated";
  }
  return "unknown";
}

World::World(Catalog catalog, ClockMode mode)
    : catalog_(std::move(catalog)), clock_(mode), scheduler_(clock_), ledger_(catalog_.request_prices()) {}

World::ProviderState& World::provider_state(std::string_view provider) {
  if (auto it = providers_.find(provider); it != providers_.end()) return *it->second;
  (void)catalog_.provider(provider);  // throws for unknown providers
  auto& state = *providers_.emplace(std::string(provider), std::make_unique<ProviderState>()).first->second;
  attach_listener(provider, state);
  return state;
}

void World::attach_listener(std::string_view provider, ProviderState& state) {
  state.storage.set_put_listener([this, p = std::string(provider)](std::string_view bucket, std::string_view key,
                                                                     const ObjectVersion& v) {
    emit("object-storage/" + std::string(bucket), std::string(key), {{"provider", p}, {"version_id", v.version_id}});
  });
}

ObjectStore& World::storage(std::string_view provider) { return provider_state(provider).storage; }
Database& World::database(std::string_view provider) { return provider_state(provider).database; }

std::string World::mint_id(std::string_view prefix) {
  auto it = counters_.find(prefix);
  if (it == counters_.end()) it = counters_.emplace(std::string(prefix), 0).first;
  return std::string(prefix) + "-" + std::to_string(++it->second);
}

CloudEvent World::emit(std::string source, std::string name, std::map<std::string, std::string> payload) {
  CloudEvent e{mint_id("evt"), std::move(source), std::move(name), std::move(payload), now()};
  event_log_.push_back(e);
  if (sink_) sink_(e);
  return e;
}

const VirtualCluster& World::provision_cluster(const ClusterRequest& request) {
  if (request.node_count < 1) throw Error(ErrorCode::InvalidArgument, "node_count must be at least 1");
  const auto& type = catalog_.instance_type(request.provider, request.instance_type);
  const auto& pc = catalog_.provider(request.provider);
  int live_nodes = 0;
  for (const auto& [id, c] : clusters_)
    if (c.provider == request.provider && c.state != ClusterState::Terminated) live_nodes += c.node_count;
  if (live_nodes + request.node_count > pc.quota_nodes)
    throw Error(ErrorCode::QuotaExceeded, std::to_string(request.node_count) + " nodes exceed the " +
                                              request.provider + " quota of " + std::to_string(pc.quota_nodes));
  faults_.check(op::provision_cluster);

  VirtualCluster c{mint_id("cluster"), request.provider, request.owner, request.instance_type, request.node_count,
                   type.spec,          request.security_groups, ClusterState::Provisioning};
  const SimTime t = now();
  for (int i = 0; i < c.node_count; ++i)
    ledger_.open(c.cluster_id + "/node-" + std::to_string(i), request.owner, UsageCategory::compute, type.price, t);
  for (const auto& [category, price] : pc.fixed_services)
    ledger_.open(request.owner + "/" + std::string(to_string(category)), request.owner, category, price, t);

  const std::string id = c.cluster_id;
  auto& stored = clusters_.emplace(id, std::move(c)).first->second;
  scheduler_.schedule_after(catalog_.delays().provision, [this, id] {
    auto& cl = clusters_.at(id);
    if (cl.state != ClusterState::Provisioning) return;
    cl.state = ClusterState::Ready;
    emit("cluster-manager/" + cl.owner, std::string(kHardwareEnvReady), {{"cluster_id", id}});
  });
  return stored;
}

const VirtualCluster& World::cluster(std::string_view cluster_id) const {
  auto it = clusters_.find(cluster_id);
  if (it == clusters_.end()) throw Error(ErrorCode::NotFound, "no cluster " + std::string(cluster_id));
  return it->second;
}

std::optional<std::string> World::cluster_of(std::string_view owner) const {
  for (const auto& [id, c] : clusters_)
    if (c.owner == owner) return id;
  return std::nullopt;
}

SimTime World::terminate_owner(std::string_view owner) {
  if (auto it = terminations_.find(owner); it != terminations_.end()) return it->second;
  const SimTime done = now() + catalog_.delays().teardown;
  terminations_.emplace(std::string(owner), done);
  scheduler_.schedule_at(done, [this, o = std::string(owner)] {
    for (auto& [id, c] : clusters_)
      if (c.owner == o) c.state = ClusterState::Terminated;
    ledger_.close_owner(o, now());
    emit("cluster-manager/" + o, std::string(kResourcesTerminated));
  });
  return done;
}

bool World::termination_started(std::string_view owner) const { return terminations_.contains(owner); }

std::vector<std::string> World::live_resources(std::optional<std::string_view> owner) const {
  std::vector<std::string> out;
  for (const auto& [id, c] : clusters_)
    if (c.state != ClusterState::Terminated && (!owner || c.owner == *owner)) out.push_back(id);
  for (const auto* e : ledger_.open_entries(owner)) out.push_back(e->resource_id);
  return out;
}

std::string World::start_job(std::string owner, std::string kind, Seconds duration, std::function<void()> effect,
                             JobDone on_done) {
  const std::string id = mint_id("job");
  jobs_.emplace(id, Job{id, std::move(owner), std::move(kind), now(), now() + duration, JobState::Running, {}, {}});
  scheduler_.schedule_after(duration, [this, id, effect = std::move(effect), on_done = std::move(on_done)] {
    auto& j = jobs_.at(id);
    try {
      if (effect) effect();
      j.state = JobState::Succeeded;
    } catch (const Error& e) {
      j.state = JobState::Failed;
      j.error_code = e.code();
      j.error = e.what();
    }
    if (on_done) on_done(j);
  });
  return id;
}

const Job& World::job(std::string_view id) const {
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw Error(ErrorCode::NotFound, "no job " + std::string(id));
  return it->second;
}

std::string World::put_object(std::string_view provider, std::string_view owner, std::string_view bucket,
                              std::string_view key, std::string bytes) {
  auto& state = provider_state(provider);
  faults_.check(op::put_object);
  ledger_.count_request(RequestKind::object_put, owner);
  return state.storage.put(bucket, key, std::move(bytes), now());
}

const ObjectVersion& World::get_object(std::string_view provider, std::string_view owner, std::string_view bucket,
                                       std::string_view key) {
  auto& state = provider_state(provider);
  faults_.check(op::get_object);
  ledger_.count_request(RequestKind::object_get, owner);
  return state.storage.get(bucket, key);
}

void World::db_put(std::string_view provider, std::string_view owner, std::string_view table, std::string_view key,
                   json item) {
  auto& state = provider_state(provider);
  faults_.check(op::db_put);
  ledger_.count_request(RequestKind::db_write, owner);
  state.database.put(table, key, std::move(item));
}

std::vector<json> World::db_query(std::string_view provider, std::string_view owner, std::string_view table,
                                  const std::vector<FieldFilter>& filters) {
  auto& state = provider_state(provider);
  faults_.check(op::db_query);
  ledger_.count_request(RequestKind::db_read, owner);
  return state.database.query(table, filters);
}

void World::pull_image(std::string_view owner, std::string_view image) {
  (void)owner;
  faults_.check(op::pull_image);
  registry_.pull(image);
}

json World::snapshot() const {
  json providers = json::object();
  for (const auto& [name, state] : providers_)
    providers[name] = {{"storage", state->storage.to_json()}, {"database", state->database.to_json()}};
  json counters = json::object();
  for (const auto& [k, v] : counters_) counters[k] = v;
  return {
      {"format", "cloudrepro-world"},
      {"version", 1},
      {"now", to_seconds(now())},
      {"providers", providers},
      {"registry", registry_.to_json()},
      {"datasets", datasets_.to_json()},
      {"ledger", ledger_.to_json()},
      {"counters", counters},
  };
}

std::unique_ptr<World> World::restore(const json& snapshot, Catalog catalog) {
  try {
    if (snapshot.at("format") != "cloudrepro-world" || snapshot.at("version") != 1)
      throw Error(ErrorCode::MalformedValue, "not a world snapshot");
    auto w = std::make_unique<World>(std::move(catalog), ClockMode::deterministic);
    w->clock_.advance_to(at_second(snapshot.at("now").get<std::int64_t>()));
    for (const auto& [name, p] : snapshot.at("providers").items()) {
      auto& state = w->provider_state(name);
      state.storage = ObjectStore::from_json(p.at("storage"));
      state.database = Database::from_json(p.at("database"));
      w->attach_listener(name, state);
    }
    w->registry_ = ImageRegistry::from_json(snapshot.at("registry"));
    w->datasets_ = DatasetCatalog::from_json(snapshot.at("datasets"));
    w->ledger_ = CostLedger::from_json(snapshot.at("ledger"));
    for (const auto& [k, v] : snapshot.at("counters").items()) w->counters_[k] = v.get<std::uint64_t>();
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedValue, std::string("world snapshot: ") + e.what());
  }
}

}  // namespace cloudrepro::simcloud
