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

#include "cloudrepro/simcloud/database.hpp"

namespace cloudrepro::simcloud {

using nlohmann::json;

const json* field_at(const json& item, std::string_view path) {
  const json* cur = &item;
  while (true) {
    const auto dot = path.find('.');
    const std::string part(path.substr(0, dot));
    if (!cur->is_object()) return nullptr;
    auto it = cur->find(part);
    if (it == cur->end()) return nullptr;
    cur = &*it;
    if (dot == std::string_view::npos) return cur;
    path.remove_prefix(dot + 1);
  }
}

bool field_equals(const json& value, std::string_view expected) {
  if (value.is_string()) return value.get_ref<const std::string&>() == expected;
  return value.dump() == expected;
}

void Database::put(std::string_view table, std::string_view key, json item) {
  auto t = tables_.find(table);
  if (t == tables_.end()) t = tables_.emplace(std::string(table), decltype(t->second){}).first;
  t->second[std::string(key)] = std::move(item);
}

std::optional<json> Database::get(std::string_view table, std::string_view key) const {
  auto t = tables_.find(table);
  if (t == tables_.end()) return std::nullopt;
  auto it = t->second.find(key);
  if (it == t->second.end()) return std::nullopt;
  return it->second;
}

std::vector<json> Database::query(std::string_view table, const std::vector<FieldFilter>& filters) const {
  std::vector<json> out;
  auto t = tables_.find(table);
  if (t == tables_.end()) return out;
  for (const auto& [key, item] : t->second) {
    bool ok = true;
    for (const auto& f : filters) {
      const json* v = field_at(item, f.field);
      if (!v || !field_equals(*v, f.value)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(item);
  }
  return out;
}

std::vector<std::string> Database::tables() const {
  std::vector<std::string> out;
  for (const auto& [name, t] : tables_) out.push_back(name);
  return out;
}

std::size_t Database::size(std::string_view table) const {
  auto t = tables_.find(table);
  return t == tables_.end() ? 0 : t->second.size();
}

void Database::clear() { tables_.clear(); }

json Database::to_json() const {
  json out = json::object();
  for (const auto& [name, t] : tables_) {
    json items = json::object();
    for (const auto& [k, v] : t) items[k] = v;
    out[name] = items;
  }
  return out;
}

Database Database::from_json(const json& j) {
  Database db;
  for (const auto& [name, items] : j.items())
    for (const auto& [k, v] : items.items()) db.put(name, k, v);
  return db;
}

}  // namespace cloudrepro::simcloud
