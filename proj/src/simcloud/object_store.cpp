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

#include "cloudrepro/simcloud/object_store.hpp"

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::simcloud {

using nlohmann::json;

void ObjectStore::create_bucket(std::string_view bucket) {
  if (!buckets_.contains(bucket)) buckets_.emplace(std::string(bucket), Bucket{});
}

bool ObjectStore::has_bucket(std::string_view bucket) const { return buckets_.contains(bucket); }

std::string ObjectStore::put(std::string_view bucket, std::string_view key, std::string bytes, SimTime at) {
  create_bucket(bucket);
  auto& versions = buckets_.find(bucket)->second[std::string(key)];
  // A put never lands before the previous version of the same key.
  if (!versions.empty() && at < versions.back().timestamp) at = versions.back().timestamp;
  const auto seq = next_sequence_++;
  versions.push_back({std::move(bytes), "v" + std::to_string(seq), seq, at});
  if (listener_) listener_(bucket, key, versions.back());
  return versions.back().version_id;
}

const std::vector<ObjectVersion>& ObjectStore::versions(std::string_view bucket, std::string_view key) const {
  auto b = buckets_.find(bucket);
  if (b == buckets_.end()) throw Error(ErrorCode::NoSuchKey, "no bucket '" + std::string(bucket) + "'");
  auto k = b->second.find(key);
  if (k == b->second.end() || k->second.empty())
    throw Error(ErrorCode::NoSuchKey, std::string(bucket) + "/" + std::string(key));
  return k->second;
}

const ObjectVersion& ObjectStore::get(std::string_view bucket, std::string_view key,
                                      std::optional<std::string_view> version_id) const {
  const auto& vs = versions(bucket, key);
  if (!version_id) return vs.back();
  for (const auto& v : vs)
    if (v.version_id == *version_id) return v;
  throw Error(ErrorCode::NoSuchKey,
              std::string(bucket) + "/" + std::string(key) + "@" + std::string(*version_id));
}

bool ObjectStore::exists(std::string_view bucket, std::string_view key) const {
  auto b = buckets_.find(bucket);
  if (b == buckets_.end()) return false;
  auto k = b->second.find(key);
  return k != b->second.end() && !k->second.empty();
}

std::vector<std::string> ObjectStore::list(std::string_view bucket, std::string_view prefix) const {
  std::vector<std::string> out;
  auto b = buckets_.find(bucket);
  if (b == buckets_.end()) return out;
  for (auto it = b->second.lower_bound(prefix); it != b->second.end() && it->first.starts_with(prefix); ++it)
    out.push_back(it->first);
  return out;
}

std::vector<std::string> ObjectStore::buckets() const {
  std::vector<std::string> out;
  for (const auto& [name, b] : buckets_) out.push_back(name);
  return out;
}

void ObjectStore::clear() { buckets_.clear(); }

void ObjectStore::for_each_version(
    const std::function<void(std::string_view, std::string_view, const ObjectVersion&)>& visit) const {
  for (const auto& [bname, bucket] : buckets_)
    for (const auto& [key, versions] : bucket)
      for (const auto& v : versions) visit(bname, key, v);
}

json ObjectStore::to_json() const {
  json buckets = json::object();
  for (const auto& [bname, bucket] : buckets_) {
    json objects = json::object();
    for (const auto& [key, versions] : bucket) {
      json vs = json::array();
      for (const auto& v : versions)
        vs.push_back({{"bytes", json::binary(std::vector<std::uint8_t>(v.bytes.begin(), v.bytes.end()))},
                      {"version_id", v.version_id},
                      {"sequence", v.sequence},
                      {"timestamp", to_seconds(v.timestamp)}});
      objects[key] = vs;
    }
    buckets[bname] = objects;
  }
  return {{"buckets", buckets}, {"next_sequence", next_sequence_}};
}

ObjectStore ObjectStore::from_json(const json& j) {
  ObjectStore s;
  s.next_sequence_ = j.at("next_sequence").get<std::uint64_t>();
  for (const auto& [bname, objects] : j.at("buckets").items()) {
    auto& bucket = s.buckets_[bname];
    for (const auto& [key, vs] : objects.items()) {
      auto& versions = bucket[key];
      for (const auto& v : vs) {
        const auto& bin = v.at("bytes").get_binary();
        versions.push_back({std::string(bin.begin(), bin.end()), v.at("version_id").get<std::string>(),
                            v.at("sequence").get<std::uint64_t>(), at_second(v.at("timestamp").get<std::int64_t>())});
      }
    }
  }
  return s;
}

}  // namespace cloudrepro::simcloud
