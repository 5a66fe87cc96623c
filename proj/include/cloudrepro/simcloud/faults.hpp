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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::simcloud {

/// Operation names used as fault-schedule keys.
namespace op {
inline constexpr std::string_view provision_cluster = "provision_cluster";
inline constexpr std::string_view pull_image = "pull_image";
inline constexpr std::string_view run_command = "run_command";
inline constexpr std::string_view put_object = "put_object";
inline constexpr std::string_view get_object = "get_object";
inline constexpr std::string_view db_put = "db_put";
inline constexpr std::string_view db_query = "db_query";
}  // namespace op

/// Failures keyed by (operation, zero-based call index), plus operations
/// that fail on every call.
class FaultSchedule {
 public:
  void fail_at(std::string_view operation, std::uint64_t call_index, ErrorCode code);
  void fail_always(std::string_view operation, ErrorCode code);
  void clear();

  /// Counts the call and throws the scheduled error, if any.
  void check(std::string_view operation);
  std::uint64_t calls(std::string_view operation) const;

 private:
  std::map<std::pair<std::string, std::uint64_t>, ErrorCode, std::less<>> at_;
  std::map<std::string, ErrorCode, std::less<>> always_;
  std::map<std::string, std::uint64_t, std::less<>> counts_;
};

}  // namespace cloudrepro::simcloud
