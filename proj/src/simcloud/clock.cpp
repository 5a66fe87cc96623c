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

#include "cloudrepro/simcloud/clock.hpp"

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::simcloud {

VirtualClock::VirtualClock(ClockMode mode) : mode_(mode), origin_(std::chrono::steady_clock::now()) {}

SimTime VirtualClock::now() const {
  if (mode_ == ClockMode::deterministic) return now_;
  return SimTime{std::chrono::duration_cast<Seconds>(std::chrono::steady_clock::now() - origin_)};
}

void VirtualClock::advance_to(SimTime t) {
  if (mode_ != ClockMode::deterministic)
    throw Error(ErrorCode::ClockModeViolation, "explicit clock advance in realtime mode");
  if (t < now_) throw Error(ErrorCode::ClockModeViolation, "virtual time cannot decrease");
  now_ = t;
}

}  // namespace cloudrepro::simcloud
