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

#include <chrono>

#include "cloudrepro/core/time.hpp"

namespace cloudrepro::simcloud {

enum class ClockMode { deterministic, realtime };

/// Monotonic virtual time. In deterministic mode time moves only through
/// advance_to/advance; in realtime mode it follows a steady wall clock and
/// explicit advances are rejected.
class VirtualClock {
 public:
  explicit VirtualClock(ClockMode mode = ClockMode::deterministic);

  ClockMode mode() const { return mode_; }
  SimTime now() const;

  /// Throws Error(ClockModeViolation) in realtime mode or when `t` < now().
  void advance_to(SimTime t);
  void advance(Seconds d) { advance_to(now() + d); }

 private:
  ClockMode mode_;
  SimTime now_{};
  std::chrono::steady_clock::time_point origin_;
};

}  // namespace cloudrepro::simcloud
