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
#include <cstdint>
#include <ratio>

namespace cloudrepro {

/// Tag clock for simulated time. Time points count whole virtual seconds
/// from the start of a simulated world; nothing here reads a wall clock.
struct SimClock {
  using rep = std::int64_t;
  using period = std::ratio<1>;
  using duration = std::chrono::duration<rep, period>;
  using time_point = std::chrono::time_point<SimClock>;
  static constexpr bool is_steady = true;
};

using Seconds = SimClock::duration;
using SimTime = SimClock::time_point;

inline constexpr std::int64_t to_seconds(SimTime t) { return t.time_since_epoch().count(); }
inline constexpr SimTime at_second(std::int64_t s) { return SimTime{Seconds{s}}; }

/// Smallest multiple of `window` that is >= `d`. `window` must be positive.
inline constexpr Seconds round_up_to_window(Seconds d, Seconds window) {
  const auto w = window.count();
  const auto n = d.count();
  if (n <= 0) return Seconds{0};
  return Seconds{((n + w - 1) / w) * w};
}

}  // namespace cloudrepro
