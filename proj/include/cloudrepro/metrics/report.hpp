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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudrepro/core/money.hpp"
#include "cloudrepro/core/time.hpp"
#include "cloudrepro/metrics/stats.hpp"
#include "cloudrepro/runtime/runtime.hpp"
#include "cloudrepro/simcloud/ledger.hpp"

namespace cloudrepro::metrics {

/// m1 * m2 kept exact, in second x tick units.
__extension__ using SecondTicks = __int128;

struct MetricReport {
  std::string instance_id;
  runtime::ExecutionMode mode = runtime::ExecutionMode::serverless;
  runtime::InstanceState state = runtime::InstanceState::Completed;
  Seconds m1{0};  // submit through termination complete
  Money m2;
  SecondTicks m3 = 0;  // always m1.count() * m2.ticks()
  double cpu_fraction = 1.0;
  Money cost_by_usage;
  std::map<std::string, Money> cost_by_category;
  std::vector<history::StageTiming> breakdown;

  double m1_hours() const { return static_cast<double>(m1.count()) / 3600.0; }
  double m2_dollars() const { return m2.dollars(); }
  /// Hours x dollars.
  double m3_ppr() const;

  nlohmann::json to_json() const;
};

/// Throws Error(OpenLedger) while the execution still holds open entries and
/// Error(InvalidState) for a non-terminal outcome. Pure.
MetricReport measure(const runtime::ExecutionOutcome& outcome, const simcloud::CostLedger& ledger,
                     double cpu_fraction = 1.0);

/// m6 as the exact fraction extra / baseline.
struct OverheadRatio {
  Seconds extra{0};
  Seconds baseline{1};
  double value() const { return static_cast<double>(extra.count()) / static_cast<double>(baseline.count()); }
  double percent() const { return 100.0 * value(); }
  /// Equal as fractions.
  bool same_ratio(const OverheadRatio& other) const {
    return extra.count() * other.baseline.count() == other.extra.count() * baseline.count();
  }
};

/// (with - without) / without. Throws Error(NonPositiveBaseline).
OverheadRatio reproducibility_overhead(Seconds with_history, Seconds without_history);

/// m7: serverless against polling execution of the same workloads.
struct EfficiencySummary {
  double mean_serverless_s = 0;
  double mean_sdk_s = 0;
  /// (sdk - serverless) / sdk, percent.
  double time_reduction_pct = 0;
  /// Reduction of the time above a no-history baseline, percent; present
  /// when a baseline mean was supplied.
  std::optional<double> overhead_reduction_pct;
  TTest test;  // sample a = sdk, sample b = serverless
  nlohmann::json to_json() const;
};

/// Throws Error(InsufficientSamples) with fewer than two reports per mode.
EfficiencySummary efficiency_comparison(std::span<const MetricReport> serverless, std::span<const MetricReport> sdk,
                                        std::optional<double> baseline_mean_s = std::nullopt);

}  // namespace cloudrepro::metrics
