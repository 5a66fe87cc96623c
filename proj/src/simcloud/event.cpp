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

#include "cloudrepro/simcloud/event.hpp"

namespace cloudrepro::simcloud {

nlohmann::json to_json(const CloudEvent& e) {
  return {{"event_id", e.event_id},
          {"source", e.source},
          {"name", e.name},
          {"payload", e.payload},
          {"timestamp", to_seconds(e.timestamp)}};
}

}  // namespace cloudrepro::simcloud
