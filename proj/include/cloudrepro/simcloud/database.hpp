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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cloudrepro::simcloud {

/// Equality predicate on a dotted field path ("parameters.engine").
struct FieldFilter {
  std::string field;
  std::string value;
};

/// Key-value item tables. Items are JSON objects.
class Database {
 public:
  void put(std::string_view table, std::string_view key, nlohmann::json item);
  std::optional<nlohmann::json> get(std::string_view table, std::string_view key) const;
  /// Items matching every filter, in key order. A string field matches its
  /// text; other fields match their JSON serialization.
  std::vector<nlohmann::json> query(std::string_view table, const std::vector<FieldFilter>& filters) const;
  std::vector<std::string> tables() const;
  std::size_t size(std::string_view table) const;
  void clear();

  nlohmann::json to_json() const;
  static Database from_json(const nlohmann::json& j);

 private:
  std::map<std::string, std::map<std::string, nlohmann::json, std::less<>>, std::less<>> tables_;
};

/// Value at a dotted path, or null.
const nlohmann::json* field_at(const nlohmann::json& item, std::string_view path);
bool field_equals(const nlohmann::json& value, std::string_view expected);

}  // namespace cloudrepro::simcloud
