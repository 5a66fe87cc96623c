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

#include "cloudrepro/simcloud/datasets.hpp"

#include <random>

#include "cloudrepro/core/digest.hpp"

namespace cloudrepro::simcloud {

std::string DatasetCatalog::bytes(std::string_view locator) const {
  if (auto it = explicit_.find(locator); it != explicit_.end()) return it->second;
  const auto h = fnv1a64(locator);
  std::mt19937_64 rng(h);
  const std::size_t size = 512 + h % 1536;
  std::string out;
  out.reserve(size);
  while (out.size() < size) {
    auto v = rng();
    for (int i = 0; i < 8 && out.size() < size; ++i, v >>= 8) out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

nlohmann::json DatasetCatalog::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : explicit_) out[k] = nlohmann::json::binary({v.begin(), v.end()});
  return out;
}

DatasetCatalog DatasetCatalog::from_json(const nlohmann::json& j) {
  DatasetCatalog c;
  for (const auto& [k, v] : j.items()) {
    const auto& bin = v.get_binary();
    c.set(k, std::string(bin.begin(), bin.end()));
  }
  return c;
}

}  // namespace cloudrepro::simcloud
