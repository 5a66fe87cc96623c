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

#include "cloudrepro/runtime/event_bus.hpp"

#include <algorithm>

namespace cloudrepro::runtime {

void EventBus::install(const std::string& instance_id, std::vector<caam::TriggerRule> rules) {
  if (!rules_.contains(instance_id)) order_.push_back(instance_id);
  rules_[instance_id] = std::move(rules);
}

void EventBus::uninstall(std::string_view instance_id) {
  if (auto it = rules_.find(instance_id); it != rules_.end()) rules_.erase(it);
  std::erase(order_, std::string(instance_id));
}

std::size_t EventBus::rule_count(std::string_view instance_id) const {
  auto it = rules_.find(instance_id);
  return it == rules_.end() ? 0 : it->second.size();
}

std::vector<RuleMatch> EventBus::match(const simcloud::CloudEvent& event) const {
  std::vector<RuleMatch> out;
  for (const auto& id : order_)
    for (const auto& rule : rules_.find(id)->second)
      if (rule.matches(event.source, event.name)) out.push_back({id, rule.target_function});
  return out;
}

}  // namespace cloudrepro::runtime
