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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/simcloud/catalog.hpp"
#include "cloudrepro/simcloud/clock.hpp"
#include "cloudrepro/simcloud/database.hpp"
#include "cloudrepro/simcloud/datasets.hpp"
#include "cloudrepro/simcloud/event.hpp"
#include "cloudrepro/simcloud/faults.hpp"
#include "cloudrepro/simcloud/ledger.hpp"
#include "cloudrepro/simcloud/object_store.hpp"
#include "cloudrepro/simcloud/registry.hpp"
#include "cloudrepro/simcloud/scheduler.hpp"

namespace cloudrepro::simcloud {

enum class ClusterState { Provisioning, Ready, Terminated };
std::string_view to_string(ClusterState state);

struct VirtualCluster {
  std::string cluster_id;
  std::string provider;
  std::string owner;
  std::string instance_type;
  int node_count = 1;
  NodeSpec node_spec;
  std::vector<std::string> security_groups;
  ClusterState state = ClusterState::Provisioning;
};

struct ClusterRequest {
  std::string provider;
  std::string owner;
  std::string instance_type;
  int node_count = 1;
  std::vector<std::string> security_groups;
};

enum class JobState { Running, Succeeded, Failed };

/// Asynchronous work on the virtual timeline. Its effect runs when it
/// finishes; an Error thrown by the effect fails the job.
struct Job {
  std::string id;
  std::string owner;
  std::string kind;
  SimTime started{};
  SimTime finishes{};
  JobState state = JobState::Running;
  std::optional<ErrorCode> error_code;
  std::string error;
};

/// Both simulated providers, their services, the shared virtual clock and
/// the cost ledger.
class World {
 public:
  explicit World(Catalog catalog = Catalog::builtin(), ClockMode mode = ClockMode::deterministic);
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  VirtualClock& clock() { return clock_; }
  Scheduler& scheduler() { return scheduler_; }
  SimTime now() const { return clock_.now(); }

  const Catalog& catalog() const { return catalog_; }
  Delays& delays() { return catalog_.delays(); }
  CostLedger& ledger() { return ledger_; }
  const CostLedger& ledger() const { return ledger_; }
  FaultSchedule& faults() { return faults_; }
  ImageRegistry& registry() { return registry_; }
  DatasetCatalog& datasets() { return datasets_; }

  /// Throws Error(UnsupportedProvider) for providers outside the catalog.
  ObjectStore& storage(std::string_view provider);
  Database& database(std::string_view provider);

  /// Identifier `<prefix>-<n>` unique within this world.
  std::string mint_id(std::string_view prefix);

  // events
  void set_event_sink(EventSink sink) { sink_ = std::move(sink); }
  CloudEvent emit(std::string source, std::string name, std::map<std::string, std::string> payload = {});
  const std::vector<CloudEvent>& event_log() const { return event_log_; }

  // clusters
  /// Validates and bills the cluster immediately; it turns Ready and emits
  /// HardwareEnvReady from `cluster-manager/<owner>` after the provisioning delay.
  /// Throws UnknownInstanceType, InvalidArgument (node_count < 1) or QuotaExceeded
  /// before any ledger entry is opened.
  const VirtualCluster& provision_cluster(const ClusterRequest& request);
  const VirtualCluster& cluster(std::string_view cluster_id) const;
  std::optional<std::string> cluster_of(std::string_view owner) const;
  /// Tears down everything `owner` holds. Ledger entries close and
  /// ResourcesTerminated is emitted after the teardown delay. Returns the
  /// completion time; repeated calls return the first call's time.
  SimTime terminate_owner(std::string_view owner);
  bool termination_started(std::string_view owner) const;
  /// Clusters not yet terminated plus open ledger entries.
  std::vector<std::string> live_resources(std::optional<std::string_view> owner = std::nullopt) const;

  // jobs
  using JobDone = std::function<void(const Job&)>;
  std::string start_job(std::string owner, std::string kind, Seconds duration, std::function<void()> effect,
                        JobDone on_done = {});
  const Job& job(std::string_view id) const;

  // metered service calls
  std::string put_object(std::string_view provider, std::string_view owner, std::string_view bucket,
                         std::string_view key, std::string bytes);
  const ObjectVersion& get_object(std::string_view provider, std::string_view owner, std::string_view bucket,
                                  std::string_view key);
  void db_put(std::string_view provider, std::string_view owner, std::string_view table, std::string_view key,
              nlohmann::json item);
  std::vector<nlohmann::json> db_query(std::string_view provider, std::string_view owner, std::string_view table,
                                       const std::vector<FieldFilter>& filters);
  void pull_image(std::string_view owner, std::string_view image);

  /// Persistent state: storage, databases, registry, datasets, ledger, clock
  /// and id counters. Pending jobs and scheduled actions are not included.
  nlohmann::json snapshot() const;
  static std::unique_ptr<World> restore(const nlohmann::json& snapshot, Catalog catalog = Catalog::builtin());

 private:
  struct ProviderState {
    ObjectStore storage;
    Database database;
  };
  ProviderState& provider_state(std::string_view provider);
  void attach_listener(std::string_view provider, ProviderState& state);

  Catalog catalog_;
  VirtualClock clock_;
  Scheduler scheduler_;
  CostLedger ledger_;
  FaultSchedule faults_;
  ImageRegistry registry_;
  DatasetCatalog datasets_;
  std::map<std::string, std::unique_ptr<ProviderState>, std::less<>> providers_;
  std::map<std::string, VirtualCluster, std::less<>> clusters_;
  std::map<std::string, SimTime, std::less<>> terminations_;
  std::map<std::string, Job, std::less<>> jobs_;
  std::map<std::string, std::uint64_t, std::less<>> counters_;
  std::vector<CloudEvent> event_log_;
  EventSink sink_;
};

}  // namespace cloudrepro::simcloud
