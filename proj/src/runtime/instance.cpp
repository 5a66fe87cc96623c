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

#include "cloudrepro/runtime/instance.hpp"

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::runtime {

std::string_view to_string(InstanceState state) {
  switch (state) {
    case InstanceState::Submitted: return "Submitted";
    case InstanceState::Provisioning: return "Provisioning";
    case InstanceState::SoftwareSetup: return "SoftwareSetup";
    case InstanceState::Executing: return "Executing";
    case InstanceState::Exporting: return "Exporting";
    case InstanceState::Terminating: return "Terminating";
    case InstanceState::Completed: return "Completed";
    case InstanceState::Failed: return "Failed";
  }
  return "unknown";
}

bool is_terminal(InstanceState state) { return state == InstanceState::Completed || state == InstanceState::Failed; }

bool is_valid_transition(InstanceState from, InstanceState to) {
  if (is_terminal(from)) return false;
  if (to == InstanceState::Failed) return true;
  return static_cast<int>(to) > static_cast<int>(from) && to != InstanceState::Submitted;
}

std::string_view to_string(ExecutionMode mode) { return mode == ExecutionMode::serverless ? "serverless" : "sdk"; }

ExecutionMode parse_execution_mode(std::string_view text) {
  if (text == "serverless") return ExecutionMode::serverless;
  if (text == "sdk") return ExecutionMode::sdk;
  throw Error(ErrorCode::MalformedValue, "mode must be serverless or sdk, got '" + std::string(text) + "'");
}

std::string_view to_string(EventAction action) {
  switch (action) {
    case EventAction::invoked: return "invoked";
    case EventAction::parked: return "parked";
    case EventAction::replayed: return "replayed";
    case EventAction::duplicate: return "duplicate";
    case EventAction::stale: return "stale";
    case EventAction::ignored: return "ignored";
  }
  return "unknown";
}

bool PipelineInstance::started(std::string_view function) const {
  for (const auto& i : invocations)
    if (i.function == function) return true;
  return false;
}

const history::StageTiming* PipelineInstance::timing(std::string_view stage) const {
  for (const auto& t : timings)
    if (t.stage == stage) return &t;
  return nullptr;
}

}  // namespace cloudrepro::runtime
