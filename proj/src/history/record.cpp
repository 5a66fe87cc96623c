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

#include "cloudrepro/history/record.hpp"

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::history {

using nlohmann::json;

std::string_view to_string(RecordStatus status) {
  switch (status) {
    case RecordStatus::PendingTermination: return "Completed-pending-termination";
    case RecordStatus::Completed: return "Completed";
    case RecordStatus::Failed: return "Failed";
  }
  return "unknown";
}

RecordStatus parse_record_status(std::string_view text) {
  for (auto s : {RecordStatus::PendingTermination, RecordStatus::Completed, RecordStatus::Failed})
    if (to_string(s) == text) return s;
  throw Error(ErrorCode::MalformedValue, "unknown record status '" + std::string(text) + "'");
}

json ExecutionRecord::to_json() const {
  json stages = json::array();
  for (const auto& s : stage_timings)
    stages.push_back({{"stage", s.stage}, {"start", to_seconds(s.start)}, {"end", to_seconds(s.end)}});
  return {
      {"execution_id", execution_id},
      {"provider", provider},
      {"engine", engine},
      {"status", to_string(status)},
      {"submit_time", to_seconds(submit_time)},
      {"start_time", to_seconds(start_time)},
      {"end_time", to_seconds(end_time)},
      {"duration_s", duration.count()},
      {"cost", cost.to_string()},
      {"cost_ticks", cost.ticks()},
      {"parameters", parameters},
      {"input_urls", input_urls},
      {"output_urls", output_urls},
      {"config_url", config_url},
      {"result_url", result_url},
      {"history_url", history_url},
      {"stage_timings", stages},
  };
}

ExecutionRecord ExecutionRecord::from_json(const json& j) {
  try {
    ExecutionRecord r;
    r.execution_id = j.at("execution_id");
    r.provider = j.at("provider");
    r.engine = j.at("engine");
    r.status = parse_record_status(j.at("status").get<std::string>());
    r.submit_time = at_second(j.at("submit_time").get<std::int64_t>());
    r.start_time = at_second(j.at("start_time").get<std::int64_t>());
    r.end_time = at_second(j.at("end_time").get<std::int64_t>());
    r.duration = Seconds{j.at("duration_s").get<std::int64_t>()};
    r.cost = Money::from_ticks(j.at("cost_ticks").get<std::int64_t>());
    r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    r.input_urls = j.at("input_urls").get<std::vector<std::string>>();
    r.output_urls = j.at("output_urls").get<std::vector<std::string>>();
    r.config_url = j.at("config_url");
    r.result_url = j.at("result_url");
    r.history_url = j.at("history_url");
    for (const auto& s : j.at("stage_timings"))
      r.stage_timings.push_back({s.at("stage").get<std::string>(), at_second(s.at("start").get<std::int64_t>()),
                                 at_second(s.at("end").get<std::int64_t>())});
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedValue, std::string("execution record: ") + e.what());
  }
}

const std::vector<std::string>& queryable_fields() {
  static const std::vector<std::string> fields = {
      "execution_id", "provider",   "engine",     "status",    "submit_time", "start_time", "end_time",
      "duration_s",   "cost",       "config_url", "result_url", "history_url"};
  return fields;
}

bool is_queryable_field(std::string_view field) {
  if (field.starts_with("parameters.") && field.size() > 11) return true;
  for (const auto& f : queryable_fields())
    if (f == field) return true;
  return false;
}

}  // namespace cloudrepro::history
