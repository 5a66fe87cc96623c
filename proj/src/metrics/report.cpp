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

#include "cloudrepro/metrics/report.hpp"

#include <cmath>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::metrics {

namespace {

std::string int128_to_string(SecondTicks v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  std::string digits;
  while (v != 0) {
    const int d = static_cast<int>(v % 10);
    digits.insert(digits.begin(), static_cast<char>('0' + (negative ? -d : d)));
    v /= 10;
  }
  return negative ? "-" + digits : digits;
}

nlohmann::json double_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

double MetricReport::m3_ppr() const {
  constexpr long double ticks_per_dollar = static_cast<long double>(Money::kTicksPerNanodollar) * Money::kNanodollarsPerDollar;
  return static_cast<double>(static_cast<long double>(m3) / (3600.0L * ticks_per_dollar));
}

nlohmann::json MetricReport::to_json() const {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : breakdown) stages.push_back({{"stage", s.stage}, {"duration_s", s.duration().count()}});
  nlohmann::json categories = nlohmann::json::object();
  for (const auto& [name, cost] : cost_by_category) categories[name] = cost.dollars();
  return {{"instance_id", instance_id},
          {"mode", runtime::to_string(mode)},
          {"state", runtime::to_string(state)},
          {"m1_execution_time_s", m1.count()},
          {"m1_execution_time_h", m1_hours()},
          {"m2_budgetary_cost", m2.dollars()},
          {"m2_cost_ticks", m2.ticks()},
          {"m3_ppr", m3_ppr()},
          {"m3_second_ticks", int128_to_string(m3)},
          {"cpu_fraction", cpu_fraction},
          {"cost_by_usage", cost_by_usage.dollars()},
          {"cost_by_category", categories},
          {"breakdown", stages}};
}

MetricReport measure(const runtime::ExecutionOutcome& outcome, const simcloud::CostLedger& ledger,
                     double cpu_fraction) {
  if (!runtime::is_terminal(outcome.state))
    throw Error(ErrorCode::InvalidState, "execution " + outcome.instance_id + " has not finished");
  const auto own = ledger.for_owner(outcome.instance_id);
  if (own.has_open_entries()) throw Error(ErrorCode::OpenLedger, "execution " + outcome.instance_id + " still bills");

  MetricReport r;
  r.instance_id = outcome.instance_id;
  r.mode = outcome.mode;
  r.state = outcome.state;
  r.m1 = outcome.total();
  r.m2 = simcloud::compute_cost(own, outcome.end_time);
  r.m3 = static_cast<SecondTicks>(r.m1.count()) * r.m2.ticks();
  r.cpu_fraction = cpu_fraction;
  r.cost_by_usage = simcloud::cost_by_usage(r.m2, cpu_fraction);
  for (const auto& e : own.entries())
    r.cost_by_category[std::string(simcloud::to_string(e.category))] += Money::for_usage(e.price, e.billed(outcome.end_time));
  for (const auto& [key, count] : own.request_counts())
    r.cost_by_category["requests." + std::string(simcloud::to_string(key.second))] +=
        Money::for_requests(own.prices().of(key.second), count);
  r.breakdown = outcome.stage_timings;
  return r;
}

OverheadRatio reproducibility_overhead(Seconds with_history, Seconds without_history) {
  if (without_history <= Seconds{0})
    throw Error(ErrorCode::NonPositiveBaseline, "baseline execution time must be positive");
  return {with_history - without_history, without_history};
}

nlohmann::json EfficiencySummary::to_json() const {
  nlohmann::json j = {{"mean_serverless_s", mean_serverless_s},
                      {"mean_sdk_s", mean_sdk_s},
                      {"time_reduction_pct", time_reduction_pct},
                      {"t_statistic", double_or_null(test.t)},
                      {"degrees_of_freedom", test.degrees_of_freedom},
                      {"p_two_sided", test.p_two_sided},
                      {"p_sdk_greater", test.p_a_greater},
                      {"p_sdk_less", test.p_a_less}};
  j["overhead_reduction_pct"] = overhead_reduction_pct ? nlohmann::json(*overhead_reduction_pct) : nlohmann::json(nullptr);
  return j;
}

EfficiencySummary efficiency_comparison(std::span<const MetricReport> serverless, std::span<const MetricReport> sdk,
                                        std::optional<double> baseline_mean_s) {
  if (serverless.size() < 2 || sdk.size() < 2)
    throw Error(ErrorCode::InsufficientSamples, "efficiency comparison needs two runs per mode");
  std::vector<double> a;
  std::vector<double> b;
  for (const auto& r : sdk) a.push_back(static_cast<double>(r.m1.count()));
  for (const auto& r : serverless) b.push_back(static_cast<double>(r.m1.count()));
  EfficiencySummary s;
  s.test = pooled_t_test(a, b);
  s.mean_sdk_s = s.test.mean_a;
  s.mean_serverless_s = s.test.mean_b;
  s.time_reduction_pct = s.mean_sdk_s > 0 ? 100.0 * (s.mean_sdk_s - s.mean_serverless_s) / s.mean_sdk_s : 0.0;
  if (baseline_mean_s) {
    const double sdk_over = s.mean_sdk_s - *baseline_mean_s;
    const double serverless_over = s.mean_serverless_s - *baseline_mean_s;
    if (sdk_over > 0) s.overhead_reduction_pct = 100.0 * (sdk_over - serverless_over) / sdk_over;
  }
  return s;
}

}  // namespace cloudrepro::metrics
