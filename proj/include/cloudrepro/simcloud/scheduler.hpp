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
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <utility>

#include "cloudrepro/simcloud/clock.hpp"

namespace cloudrepro::simcloud {

/// Actions at the same second run by priority, then in scheduling order.
/// Observers (status polls) run after every normal action due at that second.
enum class Priority : int { normal = 0, observer = 1 };

/// Discrete-event queue over a VirtualClock.
class Scheduler {
 public:
  using Action = std::function<void()>;

  explicit Scheduler(VirtualClock& clock) : clock_(clock) {}

  SimTime now() const { return clock_.now(); }
  VirtualClock& clock() { return clock_; }

  /// Times earlier than now() are clamped to now().
  void schedule_at(SimTime at, Action action, Priority priority = Priority::normal);
  void schedule_after(Seconds delay, Action action, Priority priority = Priority::normal) {
    schedule_at(now() + delay, std::move(action), priority);
  }

  /// Runs the earliest action, moving the clock to its due time (or waiting
  /// for it in realtime mode). False when nothing is pending.
  bool step();
  /// Steps until the queue is empty. Returns the number of actions run.
  std::size_t run_until_idle();
  /// Steps through every action due at or before `t`, then moves the clock to `t`.
  void run_until(SimTime t);

  bool idle() const { return queue_.empty(); }
  std::size_t pending() const { return queue_.size(); }
  std::optional<SimTime> next_due() const;

 private:
  VirtualClock& clock_;
  std::map<std::tuple<SimTime, int, std::uint64_t>, Action> queue_;
  std::uint64_t seq_ = 0;
};

}  // namespace cloudrepro::simcloud
