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

#include "cloudrepro/caam/pipeline.hpp"
#include "cloudrepro/simcloud/event.hpp"

namespace cloudrepro::runtime {

struct RuleMatch {
  std::string instance_id;
  std::string function;
  friend bool operator==(const RuleMatch&, const RuleMatch&) = default;
};

/// Trigger rules installed per pipeline instance. Matching is pure; the
/// runtime decides what to do with each match.
class EventBus {
 public:
  void install(const std::string& instance_id, std::vector<caam::TriggerRule> rules);
  void uninstall(std::string_view instance_id);
  bool installed(std::string_view instance_id) const { return rules_.contains(instance_id); }
  std::size_t rule_count(std::string_view instance_id) const;

  /// Every (instance, function) whose rule matches, in installation order.
  std::vector<RuleMatch> match(const simcloud::CloudEvent& event) const;

 private:
  std::map<std::string, std::vector<caam::TriggerRule>, std::less<>> rules_;
  std::vector<std::string> order_;
};

}  // namespace cloudrepro::runtime
