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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/caam/pipeline.hpp"
#include "cloudrepro/history/store.hpp"
#include "cloudrepro/runtime/event_bus.hpp"
#include "cloudrepro/runtime/instance.hpp"
#include "cloudrepro/simcloud/workload.hpp"
#include "cloudrepro/simcloud/world.hpp"

namespace cloudrepro::runtime {

struct RuntimeOptions {
  simcloud::WorkloadProfile workload;
  std::uint64_t workload_seed = 0;
  /// When false no archives, inputs or records are written (the baseline of
  /// the reproducibility-overhead measurement).
  bool history_enabled = true;
  /// Route emitted events to an outbox instead of the bus, so a test can
  /// deliver them in any order.
  bool capture_events = false;
};

/// History material prepared on the client before deployment. Holds no
/// credential values except `secret_values`, which exists only so stored
/// bytes can be scanned for them.
struct StagedExecution {
  std::string config_archive;
  std::vector<std::string> secret_values;
  std::map<std::string, std::string> extra_parameters;
};

struct ExecutionOutcome {
  std::string instance_id;
  InstanceState state = InstanceState::Submitted;
  ExecutionMode mode = ExecutionMode::serverless;
  SimTime submit_time{};
  SimTime end_time{};
  std::vector<history::StageTiming> stage_timings;
  std::optional<history::HistoryURL> history_url;
  std::optional<history::ExecutionRecord> record;
  std::vector<std::string> result_keys;
  std::string failure;

  Seconds total() const { return end_time - submit_time; }
  nlohmann::json to_json() const;
};

/// Deploys pipeline documents onto a simulated world and drives them
/// through their lifecycle, either by event triggers or by client polling.
class PipelineRuntime {
 public:
  explicit PipelineRuntime(simcloud::World& world, RuntimeOptions options = {});
  ~PipelineRuntime();
  PipelineRuntime(const PipelineRuntime&) = delete;
  PipelineRuntime& operator=(const PipelineRuntime&) = delete;

  simcloud::World& world() { return world_; }
  RuntimeOptions& options() { return options_; }

  /// Validates the document against the provider, binds and installs its
  /// four rules, and returns the Submitted instance. Nothing is provisioned.
  /// Throws Error(DeploymentRejected).
  PipelineInstance& deploy(const caam::PipelineDocument& doc, StagedExecution staged = {});

  /// Routes one event to every matching rule. Returns the functions started
  /// by it (replays included). Unmatched events change nothing.
  std::vector<std::string> dispatch(const simcloud::CloudEvent& event);

  /// Begins provisioning. The serverless lifecycle then follows from events.
  void start(std::string_view instance_id);

  ExecutionOutcome run_serverless(std::string_view instance_id);
  /// Rules are uninstalled; the client starts each stage itself and polls
  /// the stage-owning resource every `poll_window` (which must be positive).
  ExecutionOutcome run_sdk_mode(std::string_view instance_id, Seconds poll_window);

  const PipelineInstance& instance(std::string_view instance_id) const;
  ExecutionOutcome outcome(std::string_view instance_id) const;
  const EventBus& bus() const { return bus_; }

  /// Events emitted while capture_events is on, in emission order.
  std::vector<simcloud::CloudEvent> take_outbox();

 private:
  struct Context;

  PipelineInstance& mutable_instance(std::string_view instance_id);
  Context& context(std::string_view instance_id);
  void on_event(const simcloud::CloudEvent& event);

  void invoke(PipelineInstance& inst, const std::string& function, const simcloud::CloudEvent* trigger);
  bool predecessor_complete(const PipelineInstance& inst, std::string_view function) const;
  void replay_parked(PipelineInstance& inst);

  void begin_provisioning(PipelineInstance& inst);
  void begin_software_setup(PipelineInstance& inst);
  void begin_analytics(PipelineInstance& inst);
  void begin_export(PipelineInstance& inst);
  void begin_termination(PipelineInstance& inst);

  void stage_started(PipelineInstance& inst, std::string_view stage, InstanceState state);
  void stage_finished(PipelineInstance& inst, std::string_view stage);
  void function_completed(PipelineInstance& inst, std::string_view function);
  void fail(PipelineInstance& inst, const std::string& reason);
  void write_failed_record(PipelineInstance& inst);
  void transition(PipelineInstance& inst, InstanceState to);

  history::ExecutionRecord base_record(const PipelineInstance& inst) const;
  std::vector<history::InputDataset> inputs_of(const PipelineInstance& inst) const;
  std::optional<history::HistoryStore> history_store(const PipelineInstance& inst) const;
  std::string results_bucket(const PipelineInstance& inst) const;

  simcloud::World& world_;
  RuntimeOptions options_;
  EventBus bus_;
  std::map<std::string, std::unique_ptr<PipelineInstance>, std::less<>> instances_;
  std::map<std::string, std::unique_ptr<Context>, std::less<>> contexts_;
  std::vector<simcloud::CloudEvent> outbox_;
};

}  // namespace cloudrepro::runtime
