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

#include "cloudrepro/history/store.hpp"

#include <algorithm>
#include <set>

#include "cloudrepro/caam/pipeline.hpp"
#include "cloudrepro/core/digest.hpp"
#include "cloudrepro/core/error.hpp"

namespace cloudrepro::history {

HistoryLocation HistoryLocation::from_request(const config::AbstractRequest& request) {
  const auto& storage = request.resources.reproduce.reproduce_storage;
  const auto sep = storage.find("://");
  return {request.personal.cloud_provider, sep == std::string::npos ? std::string("store") : storage.substr(0, sep),
          caam::locator_host(storage), caam::locator_host(request.resources.reproduce.reproduce_database)};
}

std::string config_archive_key(std::string_view execution_id) {
  return "executions/" + std::string(execution_id) + "/" + std::string(kConfigArchiveName);
}

std::string result_archive_key(std::string_view execution_id) {
  return "executions/" + std::string(execution_id) + "/" + std::string(kResultArchiveName);
}

std::string input_key(std::string_view bytes) { return "inputs/sha256/" + sha256_hex(bytes); }

HistoryStore::HistoryStore(simcloud::World& world, HistoryLocation location)
    : world_(world), location_(std::move(location)) {
  if (location_.bucket.empty() || location_.table.empty())
    throw Error(ErrorCode::InvalidArgument, "history location needs a bucket and a table");
}

std::string HistoryStore::object_url(std::string_view key) const {
  return location_.storage_scheme + "://" + location_.bucket + "/" + std::string(key);
}

HistoryURL HistoryStore::url_for(std::string_view execution_id) const {
  return {location_.provider, location_.bucket, std::string(execution_id)};
}

int HistoryStore::new_input_count(const std::vector<InputDataset>& inputs) const {
  std::set<std::string> keys;
  auto& storage = world_.storage(location_.provider);
  for (const auto& in : inputs) {
    auto key = input_key(in.bytes);
    if (!storage.exists(location_.bucket, key)) keys.insert(std::move(key));
  }
  return static_cast<int>(keys.size());
}

int HistoryStore::planned_storage_ops(const std::vector<InputDataset>& inputs) const {
  return 2 + new_input_count(inputs) + 1;
}

HistoryURL HistoryStore::store_execution(ExecutionRecord& record, const ArchiveBundle& bundle,
                                         const std::vector<InputDataset>& inputs,
                                         const std::vector<std::string>& secret_values, std::string_view owner) {
  const auto url = url_for(record.execution_id);
  record.config_url = object_url(config_archive_key(record.execution_id));
  record.result_url = object_url(result_archive_key(record.execution_id));
  record.history_url = url.to_string();
  record.input_urls.clear();
  for (const auto& in : inputs) record.input_urls.push_back(object_url(input_key(in.bytes)));

  for (std::string_view stream : {std::string_view(bundle.config_zip), std::string_view(bundle.result_zip)})
    if (auto hits = find_secret_values(stream, secret_values); !hits.empty())
      throw Error(ErrorCode::RedactionViolation, "archive contains a credential value");
  if (!find_secret_values(record.to_json().dump(), secret_values).empty())
    throw Error(ErrorCode::RedactionViolation, "execution record contains a credential value");
  if (auto keys = unredacted_personal_keys(read_config_archive(bundle.config_zip)); !keys.empty())
    throw Error(ErrorCode::RedactionViolation, "personal.ini carries a value for " + keys.front());

  const auto& p = location_.provider;
  const auto& b = location_.bucket;
  world_.put_object(p, owner, b, config_archive_key(record.execution_id), bundle.config_zip);
  world_.put_object(p, owner, b, result_archive_key(record.execution_id), bundle.result_zip);
  for (const auto& in : inputs) {
    const auto key = input_key(in.bytes);
    if (!world_.storage(p).exists(b, key)) world_.put_object(p, owner, b, key, in.bytes);
  }
  world_.db_put(p, owner, location_.table, record.execution_id, record.to_json());
  return url;
}

void HistoryStore::update_record(const ExecutionRecord& record, std::string_view owner) {
  world_.db_put(location_.provider, owner, location_.table, record.execution_id, record.to_json());
}

namespace {

void check_filters(const std::vector<simcloud::FieldFilter>& filters) {
  for (const auto& f : filters)
    if (!is_queryable_field(f.field)) throw Error(ErrorCode::UnknownField, "cannot filter on '" + f.field + "'");
}

void order_by_submission(std::vector<ExecutionRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::pair(a.submit_time, a.execution_id) < std::pair(b.submit_time, b.execution_id);
  });
}

}  // namespace

std::vector<ExecutionRecord> HistoryStore::query(const std::vector<simcloud::FieldFilter>& filters) const {
  check_filters(filters);
  std::vector<ExecutionRecord> out;
  for (const auto& item : world_.database(location_.provider).query(location_.table, filters))
    out.push_back(ExecutionRecord::from_json(item));
  order_by_submission(out);
  return out;
}

std::vector<ExecutionRecord> HistoryStore::query_all(simcloud::World& world,
                                                     const std::vector<simcloud::FieldFilter>& filters) {
  check_filters(filters);
  std::vector<ExecutionRecord> out;
  for (const auto& provider : world.catalog().providers()) {
    auto& db = world.database(provider);
    for (const auto& table : db.tables())
      for (const auto& item : db.query(table, filters)) out.push_back(ExecutionRecord::from_json(item));
  }
  order_by_submission(out);
  return out;
}

std::optional<std::string> HistoryStore::locate_table(simcloud::World& world, std::string_view provider,
                                                      std::string_view execution_id) {
  auto& db = world.database(provider);
  for (const auto& table : db.tables())
    if (db.get(table, execution_id)) return table;
  return std::nullopt;
}

std::pair<ExecutionRecord, ArchiveBundle> HistoryStore::fetch_execution(simcloud::World& world,
                                                                        const HistoryURL& url) {
  if (!world.catalog().has_provider(url.provider))
    throw Error(ErrorCode::NotFound, "no history on provider '" + url.provider + "'");
  const auto table = locate_table(world, url.provider, url.execution_id);
  if (!table) throw Error(ErrorCode::NotFound, "no execution " + url.to_string());
  auto record = ExecutionRecord::from_json(*world.database(url.provider).get(*table, url.execution_id));
  if (record.history_url != url.to_string()) throw Error(ErrorCode::NotFound, "no execution " + url.to_string());
  auto& storage = world.storage(url.provider);
  try {
    ArchiveBundle bundle{storage.get(url.store, config_archive_key(url.execution_id)).bytes,
                         storage.get(url.store, result_archive_key(url.execution_id)).bytes};
    return {std::move(record), std::move(bundle)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoSuchKey) throw Error(ErrorCode::NotFound, "archives of " + url.to_string() + " are missing");
    throw;
  }
}

std::pair<ExecutionRecord, ArchiveBundle> HistoryStore::fetch_execution(simcloud::World& world, std::string_view url) {
  return fetch_execution(world, HistoryURL::parse(url));
}

}  // namespace cloudrepro::history
