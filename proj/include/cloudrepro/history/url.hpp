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

#include <string>
#include <string_view>

namespace cloudrepro::history {

inline constexpr std::string_view kUrlScheme = "rpac";

/// `rpac://<provider>/<store>/<execution_id>`
struct HistoryURL {
  std::string provider;
  std::string store;
  std::string execution_id;

  std::string to_string() const;
  /// Throws Error(MalformedURL).
  static HistoryURL parse(std::string_view text);

  friend bool operator==(const HistoryURL&, const HistoryURL&) = default;
};

}  // namespace cloudrepro::history
