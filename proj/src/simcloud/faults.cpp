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

#include "cloudrepro/simcloud/faults.hpp"

namespace cloudrepro::simcloud {

void FaultSchedule::fail_at(std::string_view operation, std::uint64_t call_index, ErrorCode code) {
  at_[{std::string(operation), call_index}] = code;
}

void FaultSchedule::fail_always(std::string_view operation, ErrorCode code) { always_[std::string(operation)] = code; }

void FaultSchedule::clear() {
  at_.clear();
  always_.clear();
  counts_.clear();
}

void FaultSchedule::check(std::string_view operation) {
  auto c = counts_.find(operation);
  if (c == counts_.end()) c = counts_.emplace(std::string(operation), 0).first;
  const auto index = c->second++;
  if (auto a = always_.find(operation); a != always_.end())
    throw Error(a->second, "injected fault in " + std::string(operation));
  if (auto f = at_.find(std::pair{std::string(operation), index}); f != at_.end())
    throw Error(f->second, "injected fault in " + std::string(operation) + " call " + std::to_string(index));
}

std::uint64_t FaultSchedule::calls(std::string_view operation) const {
  auto c = counts_.find(operation);
  return c == counts_.end() ? 0 : c->second;
}

}  // namespace cloudrepro::simcloud
