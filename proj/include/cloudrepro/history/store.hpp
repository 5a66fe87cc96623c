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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cloudrepro/config/request.hpp"
#include "cloudrepro/history/archive.hpp"
#include "cloudrepro/history/record.hpp"
#include "cloudrepro/history/url.hpp"
#include "cloudrepro/simcloud/database.hpp"
#include "cloudrepro/simcloud/world.hpp"

namespace cloudrepro::history {

/// Where one provider keeps execution history: a bucket for archives and
/// shared inputs, a table for records.
struct HistoryLocation {
  std::string provider;
  std::string storage_scheme;  // scheme of reproduce_storage, used in minted object URLs
  std::string bucket;
  std::string table;

  /// From the request's reproduce section and cloud_provider.
  static HistoryLocation from_request(const config::AbstractRequest& request);
  friend bool operator==(const HistoryLocation&, const HistoryLocation&) = default;
};

struct InputDataset {
  std::string locator;
  std::string bytes;
};

std::string config_archive_key(std::string_view execution_id);
std::string result_archive_key(std::string_view execution_id);
/// Content address of a shared input: `inputs/sha256/<hex>`.
std::string input_key(std::string_view bytes);

/// Execution history on the simulated cloud. Records live in the table,
/// archives under executions/<id>/, inputs once per distinct content.
class HistoryStore {
 public:
  HistoryStore(simcloud::World& world, HistoryLocation location);

  const HistoryLocation& location() const { return location_; }
  std::string object_url(std::string_view key) const;
  HistoryURL url_for(std::string_view execution_id) const;

  /// Inputs whose content is not stored yet, counting duplicates in the list once.
  int new_input_count(const std::vector<InputDataset>& inputs) const;
  /// Storage operations store_execution will perform: both archives, new
  /// inputs and the record write.
  int planned_storage_ops(const std::vector<InputDataset>& inputs) const;

  /// Writes archives, new inputs and the record, filling the record's URL
  /// fields. Before writing anything, scans the record and bundle for the
  /// given secret values and for unredacted personal keys
  /// (Error(RedactionViolation)). Storage faults propagate.
  HistoryURL store_execution(ExecutionRecord& record, const ArchiveBundle& bundle,
                             const std::vector<InputDataset>& inputs, const std::vector<std::string>& secret_values,
                             std::string_view owner);

  /// Rewrites a stored record (one database write).
  void update_record(const ExecutionRecord& record, std::string_view owner);

  /// Records satisfying every filter, ordered by submit time then id.
  /// Throws Error(UnknownField).
  std::vector<ExecutionRecord> query(const std::vector<simcloud::FieldFilter>& filters) const;

  /// Throws Error(NotFound).
  /// Every record table of every provider. Same ordering and errors as query().
  static std::vector<ExecutionRecord> query_all(simcloud::World& world,
                                                const std::vector<simcloud::FieldFilter>& filters);
  static std::pair<ExecutionRecord, ArchiveBundle> fetch_execution(simcloud::World& world, const HistoryURL& url);
  static std::pair<ExecutionRecord, ArchiveBundle> fetch_execution(simcloud::World& world, std::string_view url);
  /// Table holding `execution_id` for the provider, searched in name order.
  static std::optional<std::string> locate_table(simcloud::World& world, std::string_view provider,
                                                 std::string_view execution_id);

 private:
  simcloud::World& world_;
  HistoryLocation location_;
};

}  // namespace cloudrepro::history
