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

#include "cloudrepro/simcloud/registry.hpp"

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::simcloud {

bool ImageRegistry::contains(std::string_view image) const {
  if (image.empty() || missing_.contains(image)) return false;
  if (images_.contains(image)) return true;
  return accept_unlisted_ && image.find_first_of(" \t\n") == std::string_view::npos;
}

void ImageRegistry::pull(std::string_view image) const {
  if (!contains(image)) throw Error(ErrorCode::NoSuchImage, "image '" + std::string(image) + "' not in registry");
}

nlohmann::json ImageRegistry::to_json() const {
  return {{"images", images_}, {"missing", missing_}, {"accept_unlisted", accept_unlisted_}};
}

ImageRegistry ImageRegistry::from_json(const nlohmann::json& j) {
  ImageRegistry r;
  for (const auto& i : j.at("images")) r.add(i.get<std::string>());
  for (const auto& i : j.at("missing")) r.mark_missing(i.get<std::string>());
  r.accept_unlisted_ = j.at("accept_unlisted").get<bool>();
  return r;
}

}  // namespace cloudrepro::simcloud
