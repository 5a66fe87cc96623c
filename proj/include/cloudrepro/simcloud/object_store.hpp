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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/core/time.hpp"

namespace cloudrepro::simcloud {

struct ObjectVersion {
  std::string bytes;
  std::string version_id;  // "v<sequence>"
  std::uint64_t sequence = 0;
  SimTime timestamp{};
  friend bool operator==(const ObjectVersion&, const ObjectVersion&) = default;
};

/// Versioned buckets. Every put appends a version; versions of one key are
/// ordered by (timestamp, sequence) and reads without a version id return
/// the last one.
class ObjectStore {
 public:
  using PutListener = std::function<void(std::string_view bucket, std::string_view key, const ObjectVersion&)>;

  void create_bucket(std::string_view bucket);
  bool has_bucket(std::string_view bucket) const;

  /// Creates the bucket when missing. Returns the new version id.
  std::string put(std::string_view bucket, std::string_view key, std::string bytes, SimTime at);
  /// Throws Error(NoSuchKey).
  const ObjectVersion& get(std::string_view bucket, std::string_view key,
                           std::optional<std::string_view> version_id = std::nullopt) const;
  bool exists(std::string_view bucket, std::string_view key) const;
  const std::vector<ObjectVersion>& versions(std::string_view bucket, std::string_view key) const;
  /// Keys in lexicographic order.
  std::vector<std::string> list(std::string_view bucket, std::string_view prefix = {}) const;
  std::vector<std::string> buckets() const;
  /// Removes every bucket and object.
  void clear();

  void set_put_listener(PutListener listener) { listener_ = std::move(listener); }

  /// Visits every stored version of every object.
  void for_each_version(const std::function<void(std::string_view bucket, std::string_view key,
                                                 const ObjectVersion&)>& visit) const;

  nlohmann::json to_json() const;
  static ObjectStore from_json(const nlohmann::json& j);

 private:
  using Bucket = std::map<std::string, std::vector<ObjectVersion>, std::less<>>;
  std::map<std::string, Bucket, std::less<>> buckets_;
  std::uint64_t next_sequence_ = 1;
  PutListener listener_;
};

}  // namespace cloudrepro::simcloud
