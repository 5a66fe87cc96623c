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

#include "cloudrepro/simcloud/ledger.hpp"

#include <algorithm>
#include <sstream>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::simcloud {

using nlohmann::json;

namespace {

constexpr std::array kCategories = {UsageCategory::compute,  UsageCategory::network,
                                    UsageCategory::container, UsageCategory::database,
                                    UsageCategory::object_storage, UsageCategory::serverless};
constexpr std::array kRequestKinds = {RequestKind::object_put, RequestKind::object_get, RequestKind::db_write,
                                      RequestKind::db_read, RequestKind::function_invocation};

template <typename E, std::size_t N>
E parse_enum(const std::array<E, N>& all, std::string_view name) {
  for (auto e : all)
    if (to_string(e) == name) return e;
  throw Error(ErrorCode::MalformedValue, "unknown ledger value '" + std::string(name) + "'");
}

}  // namespace

std::string_view to_string(UsageCategory category) {
  switch (category) {
    case UsageCategory::compute: return "compute";
    case UsageCategory::network: return "network";
    case UsageCategory::container: return "container";
    case UsageCategory::database: return "database";
    case UsageCategory::object_storage: return "object_storage";
    case UsageCategory::serverless: return "serverless";
  }
  return "unknown";
}

std::string_view to_string(RequestKind kind) {
  switch (kind) {
    case RequestKind::object_put: return "object_put";
    case RequestKind::object_get: return "object_get";
    case RequestKind::db_write: return "db_write";
    case RequestKind::db_read: return "db_read";
    case RequestKind::function_invocation: return "function_invocation";
  }
  return "unknown";
}

RequestPrice RequestPrices::of(RequestKind kind) const {
  switch (kind) {
    case RequestKind::object_put: return object_put;
    case RequestKind::object_get: return object_get;
    case RequestKind::db_write: return db_write;
    case RequestKind::db_read: return db_read;
    case RequestKind::function_invocation: return function_invocation;
  }
  return {};
}

Seconds LedgerEntry::billed(SimTime at) const {
  const SimTime end = closed ? std::min(*closed, at) : at;
  return end > opened ? end - opened : Seconds{0};
}

void CostLedger::open(std::string resource_id, std::string owner, UsageCategory category, HourlyPrice price,
                      SimTime at) {
  for (const auto& e : entries_)
    if (e.resource_id == resource_id && e.is_open())
      throw Error(ErrorCode::InvalidState, "resource " + resource_id + " is already billed");
  entries_.push_back({std::move(resource_id), std::move(owner), category, price, at, std::nullopt});
}

void CostLedger::close(std::string_view resource_id, SimTime at) {
  for (auto& e : entries_)
    if (e.resource_id == resource_id && e.is_open()) e.closed = std::max(at, e.opened);
}

std::size_t CostLedger::close_owner(std::string_view owner, SimTime at) {
  std::size_t n = 0;
  for (auto& e : entries_)
    if (e.owner == owner && e.is_open()) {
      e.closed = std::max(at, e.opened);
      ++n;
    }
  return n;
}

void CostLedger::count_request(RequestKind kind, std::string_view owner, std::int64_t n) {
  requests_[{std::string(owner), kind}] += n;
}

std::vector<const LedgerEntry*> CostLedger::open_entries(std::optional<std::string_view> owner) const {
  std::vector<const LedgerEntry*> out;
  for (const auto& e : entries_)
    if (e.is_open() && (!owner || e.owner == *owner)) out.push_back(&e);
  return out;
}

bool CostLedger::has_open_entries(std::optional<std::string_view> owner) const {
  return !open_entries(owner).empty();
}

std::int64_t CostLedger::request_count(RequestKind kind, std::optional<std::string_view> owner) const {
  std::int64_t n = 0;
  for (const auto& [key, count] : requests_)
    if (key.second == kind && (!owner || key.first == *owner)) n += count;
  return n;
}

CostLedger CostLedger::for_owner(std::string_view owner) const {
  CostLedger out(prices_);
  for (const auto& e : entries_)
    if (e.owner == owner) out.entries_.push_back(e);
  for (const auto& [key, count] : requests_)
    if (key.first == owner) out.requests_[key] = count;
  return out;
}

json CostLedger::to_json() const {
  json entries = json::array();
  for (const auto& e : entries_) {
    json j = {{"resource_id", e.resource_id},
              {"owner", e.owner},
              {"category", to_string(e.category)},
              {"nanodollars_per_hour", e.price.nanodollars_per_hour},
              {"opened", to_seconds(e.opened)}};
    j["closed"] = e.closed ? json(to_seconds(*e.closed)) : json(nullptr);
    entries.push_back(std::move(j));
  }
  json requests = json::array();
  for (const auto& [key, count] : requests_)
    requests.push_back({{"owner", key.first}, {"kind", to_string(key.second)}, {"count", count}});
  json prices = json::object();
  for (auto k : kRequestKinds) prices[std::string(to_string(k))] = prices_.of(k).nanodollars;
  return {{"entries", entries}, {"requests", requests}, {"request_prices", prices}};
}

CostLedger CostLedger::from_json(const json& j) {
  RequestPrices prices;
  const auto& p = j.at("request_prices");
  prices.object_put.nanodollars = p.at("object_put");
  prices.object_get.nanodollars = p.at("object_get");
  prices.db_write.nanodollars = p.at("db_write");
  prices.db_read.nanodollars = p.at("db_read");
  prices.function_invocation.nanodollars = p.at("function_invocation");
  CostLedger out(prices);
  for (const auto& e : j.at("entries")) {
    LedgerEntry entry{e.at("resource_id"), e.at("owner"), parse_enum(kCategories, e.at("category").get<std::string>()),
                      HourlyPrice{e.at("nanodollars_per_hour").get<std::int64_t>()},
                      at_second(e.at("opened").get<std::int64_t>()), std::nullopt};
    if (!e.at("closed").is_null()) entry.closed = at_second(e.at("closed").get<std::int64_t>());
    out.entries_.push_back(std::move(entry));
  }
  for (const auto& r : j.at("requests"))
    out.requests_[{r.at("owner").get<std::string>(), parse_enum(kRequestKinds, r.at("kind").get<std::string>())}] =
        r.at("count").get<std::int64_t>();
  return out;
}

std::string CostLedger::to_jsonl(SimTime at) const {
  std::ostringstream out;
  for (const auto& e : entries_) {
    json j = {{"type", "usage"},
              {"resource_id", e.resource_id},
              {"owner", e.owner},
              {"category", to_string(e.category)},
              {"nanodollars_per_hour", e.price.nanodollars_per_hour},
              {"opened", to_seconds(e.opened)},
              {"billed_seconds", e.billed(at).count()},
              {"cost", Money::for_usage(e.price, e.billed(at)).to_string()}};
    j["closed"] = e.closed ? json(to_seconds(*e.closed)) : json(nullptr);
    out << j.dump() << '\n';
  }
  for (const auto& [key, count] : requests_) {
    json j = {{"type", "requests"},
              {"owner", key.first},
              {"kind", to_string(key.second)},
              {"count", count},
              {"cost", Money::for_requests(prices_.of(key.second), count).to_string()}};
    out << j.dump() << '\n';
  }
  return out.str();
}

Money compute_cost(const CostLedger& ledger, SimTime at) {
  Money total;
  for (const auto& e : ledger.entries()) total += Money::for_usage(e.price, e.billed(at));
  for (const auto& [key, count] : ledger.request_counts())
    total += Money::for_requests(ledger.prices().of(key.second), count);
  return total;
}

Money cost_by_usage(Money cost, double cpu_fraction) {
  if (!(cpu_fraction >= 0.0 && cpu_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "cpu fraction must lie in [0, 1]");
  return cost.scaled(cpu_fraction);
}

}  // namespace cloudrepro::simcloud
