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

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/caam/pipeline.hpp"
#include "cloudrepro/core/time.hpp"
#include "cloudrepro/history/record.hpp"
#include "cloudrepro/simcloud/event.hpp"

namespace cloudrepro::runtime {

/// Lifecycle order; Failed is reachable from every non-terminal state.
enum class InstanceState { Submitted, Provisioning, SoftwareSetup, Executing, Exporting, Terminating, Completed, Failed };
std::string_view to_string(InstanceState state);
bool is_terminal(InstanceState state);
/// True for a forward step of the lifecycle order or a step into Failed
/// from a non-terminal state.
bool is_valid_transition(InstanceState from, InstanceState to);

enum class ExecutionMode { serverless, sdk };
std::string_view to_string(ExecutionMode mode);
/// Throws Error(MalformedValue).
ExecutionMode parse_execution_mode(std::string_view text);

namespace stage {
inline constexpr std::string_view provisioning = "provisioning";
inline constexpr std::string_view software_setup = "software_setup";
inline constexpr std::string_view analytics = "analytics";
inline constexpr std::string_view export_history = "export";
inline constexpr std::string_view termination = "termination";
}  // namespace stage

inline constexpr std::array<std::string_view, 5> kStageOrder = {
    stage::provisioning, stage::software_setup, stage::analytics, stage::export_history, stage::termination};

/// What the runtime did with one delivered event.
enum class EventAction { invoked, parked, replayed, duplicate, stale, ignored };
std::string_view to_string(EventAction action);

struct EventLogEntry {
  simcloud::CloudEvent event;
  EventAction action = EventAction::ignored;
  std::string function;
};

/// One function start, numbered in start order.
struct Invocation {
  std::string function;
  SimTime at{};
};

struct PipelineInstance {
  std::string instance_id;
  caam::PipelineDocument document;  // rules bound to instance_id
  InstanceState state = InstanceState::Submitted;
  ExecutionMode mode = ExecutionMode::serverless;
  std::vector<EventLogEntry> event_log;
  std::vector<history::StageTiming> timings;
  std::vector<Invocation> invocations;
  std::set<std::string, std::less<>> completed_functions;
  std::set<std::string, std::less<>> seen_event_ids;
  std::vector<std::pair<simcloud::CloudEvent, std::string>> parked;

  SimTime submit_time{};
  std::optional<SimTime> start_time;
  std::optional<SimTime> end_time;
  std::optional<std::string> cluster_id;
  bool failed = false;
  std::string failure;
  std::vector<std::string> result_keys;
  std::optional<history::ExecutionRecord> record;

  bool started(std::string_view function) const;
  const history::StageTiming* timing(std::string_view stage) const;
};

}  // namespace cloudrepro::runtime
