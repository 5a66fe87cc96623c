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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/core/money.hpp"
#include "cloudrepro/core/time.hpp"

namespace cloudrepro::simcloud {

enum class UsageCategory { compute, network, container, database, object_storage, serverless };
std::string_view to_string(UsageCategory category);

enum class RequestKind { object_put, object_get, db_write, db_read, function_invocation };
std::string_view to_string(RequestKind kind);

struct RequestPrices {
  RequestPrice object_put;
  RequestPrice object_get;
  RequestPrice db_write;
  RequestPrice db_read;
  RequestPrice function_invocation;

  RequestPrice of(RequestKind kind) const;
};

/// One billed resource. An entry without `closed` is still accruing.
struct LedgerEntry {
  std::string resource_id;
  std::string owner;
  UsageCategory category = UsageCategory::compute;
  HourlyPrice price;
  SimTime opened{};
  std::optional<SimTime> closed;

  bool is_open() const { return !closed.has_value(); }
  /// Billed seconds up to `at`: [opened, min(closed, at)], never negative.
  Seconds billed(SimTime at) const;
};

/// Usage intervals and metered request counts, grouped by owner (the
/// pipeline instance that caused them).
class CostLedger {
 public:
  CostLedger() = default;
  explicit CostLedger(RequestPrices prices) : prices_(prices) {}

  /// Throws Error(InvalidState) if `resource_id` already has an open entry.
  void open(std::string resource_id, std::string owner, UsageCategory category, HourlyPrice price, SimTime at);
  /// Closing an already closed or unknown resource is a no-op.
  void close(std::string_view resource_id, SimTime at);
  /// Closes every open entry of `owner`. Returns how many were closed.
  std::size_t close_owner(std::string_view owner, SimTime at);

  void count_request(RequestKind kind, std::string_view owner, std::int64_t n = 1);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  const RequestPrices& prices() const { return prices_; }
  std::vector<const LedgerEntry*> open_entries(std::optional<std::string_view> owner = std::nullopt) const;
  bool has_open_entries(std::optional<std::string_view> owner = std::nullopt) const;

  std::int64_t request_count(RequestKind kind, std::optional<std::string_view> owner = std::nullopt) const;
  const std::map<std::pair<std::string, RequestKind>, std::int64_t, std::less<>>& request_counts() const {
    return requests_;
  }

  /// Entries and counts of one owner only.
  CostLedger for_owner(std::string_view owner) const;

  /// One JSON object per line: entries then request counts.
  std::string to_jsonl(SimTime at) const;
  nlohmann::json to_json() const;
  static CostLedger from_json(const nlohmann::json& j);

 private:
  RequestPrices prices_;
  std::vector<LedgerEntry> entries_;
  std::map<std::pair<std::string, RequestKind>, std::int64_t, std::less<>> requests_;
};

/// Usage charges of every entry up to `at` plus all metered requests. Pure.
Money compute_cost(const CostLedger& ledger, SimTime at);

/// Share of `cost` attributable to the CPU fraction actually used.
/// Throws Error(InvalidArgument) outside [0, 1].
Money cost_by_usage(Money cost, double cpu_fraction);

}  // namespace cloudrepro::simcloud
