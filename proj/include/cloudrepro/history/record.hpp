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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/core/money.hpp"
#include "cloudrepro/core/time.hpp"

namespace cloudrepro::history {

/// PendingTermination marks a record exported before its resources are gone.
enum class RecordStatus { PendingTermination, Completed, Failed };
std::string_view to_string(RecordStatus status);
RecordStatus parse_record_status(std::string_view text);

struct StageTiming {
  std::string stage;
  SimTime start{};
  SimTime end{};
  Seconds duration() const { return end - start; }
  friend bool operator==(const StageTiming&, const StageTiming&) = default;
};

/// Parameter key holding the full analytics command line.
inline constexpr std::string_view kCommandParameter = "command";
/// Parameter key holding the history URL a reproduction descends from.
inline constexpr std::string_view kAncestorParameter = "ancestor";

struct ExecutionRecord {
  std::string execution_id;
  std::string provider;
  std::string engine;
  RecordStatus status = RecordStatus::PendingTermination;
  SimTime submit_time{};
  SimTime start_time{};
  SimTime end_time{};
  Seconds duration{0};  // end_time − start_time
  Money cost;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> input_urls;
  std::vector<std::string> output_urls;
  std::string config_url;
  std::string result_url;
  std::string history_url;
  std::vector<StageTiming> stage_timings;

  nlohmann::json to_json() const;
  /// Throws Error(MalformedValue).
  static ExecutionRecord from_json(const nlohmann::json& j);

  friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

/// Top-level fields accepted by history queries; `parameters.<key>` is
/// accepted as well.
const std::vector<std::string>& queryable_fields();
bool is_queryable_field(std::string_view field);

}  // namespace cloudrepro::history
