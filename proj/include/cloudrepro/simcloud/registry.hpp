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

#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

namespace cloudrepro::simcloud {

/// Container images known to the simulated registry. With accept_unlisted
/// set (the default) any syntactically plausible image pulls successfully
/// unless explicitly marked missing.
class ImageRegistry {
 public:
  void add(std::string image) { images_.insert(std::move(image)); }
  void mark_missing(std::string image) { missing_.insert(std::move(image)); }
  void set_accept_unlisted(bool accept) { accept_unlisted_ = accept; }
  bool accept_unlisted() const { return accept_unlisted_; }

  bool contains(std::string_view image) const;
  /// Throws Error(NoSuchImage).
  void pull(std::string_view image) const;

  nlohmann::json to_json() const;
  static ImageRegistry from_json(const nlohmann::json& j);

 private:
  std::set<std::string, std::less<>> images_;
  std::set<std::string, std::less<>> missing_;
  bool accept_unlisted_ = true;
};

}  // namespace cloudrepro::simcloud
