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

#include "cloudrepro/simcloud/scheduler.hpp"

#include <thread>

namespace cloudrepro::simcloud {

void Scheduler::schedule_at(SimTime at, Action action, Priority priority) {
  queue_.emplace(std::tuple{std::max(at, now()), static_cast<int>(priority), seq_++}, std::move(action));
}

std::optional<SimTime> Scheduler::next_due() const {
  if (queue_.empty()) return std::nullopt;
  return std::get<0>(queue_.begin()->first);
}

bool Scheduler::step() {
  if (queue_.empty()) return false;
  auto node = queue_.extract(queue_.begin());
  const SimTime due = std::get<0>(node.key());
  if (clock_.mode() == ClockMode::deterministic) {
    if (due > clock_.now()) clock_.advance_to(due);
  } else {
    while (clock_.now() < due) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  node.mapped()();
  return true;
}

std::size_t Scheduler::run_until_idle() {
  std::size_t n = 0;
  while (step()) ++n;
  return n;
}

void Scheduler::run_until(SimTime t) {
  while (!queue_.empty() && std::get<0>(queue_.begin()->first) <= t) step();
  if (clock_.mode() == ClockMode::deterministic && clock_.now() < t) clock_.advance_to(t);
}

}  // namespace cloudrepro::simcloud
