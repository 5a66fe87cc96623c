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
#include <string>
#include <string_view>

#include <json.hpp>

namespace cloudrepro::simcloud {

/// Contents of the public datasets referenced by data_uri locators. Unknown
/// locators resolve to bytes derived from the locator text alone.
class DatasetCatalog {
 public:
  void set(std::string locator, std::string bytes) { explicit_[std::move(locator)] = std::move(bytes); }
  std::string bytes(std::string_view locator) const;

  nlohmann::json to_json() const;
  static DatasetCatalog from_json(const nlohmann::json& j);

 private:
  std::map<std::string, std::string, std::less<>> explicit_;
};

}  // namespace cloudrepro::simcloud
