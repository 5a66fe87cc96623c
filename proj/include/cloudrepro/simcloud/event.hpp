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

#include <functional>
#include <map>
#include <string>

#include <json.hpp>

#include "cloudrepro/core/time.hpp"

namespace cloudrepro::simcloud {

/// Notification emitted by a simulated service. `name` is an event name for
/// lifecycle events and the object key for storage events.
struct CloudEvent {
  std::string event_id;
  std::string source;
  std::string name;
  std::map<std::string, std::string> payload;
  SimTime timestamp{};

  friend bool operator==(const CloudEvent&, const CloudEvent&) = default;
};

using EventSink = std::function<void(const CloudEvent&)>;

nlohmann::json to_json(const CloudEvent& e);

}  // namespace cloudrepro::simcloud
