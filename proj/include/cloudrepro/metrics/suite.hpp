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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/config/request.hpp"
#include "cloudrepro/metrics/report.hpp"
#include "cloudrepro/simcloud/catalog.hpp"
#include "cloudrepro/simcloud/clock.hpp"
#include "cloudrepro/simcloud/workload.hpp"

namespace cloudrepro::metrics {

/// scale_up: one node, growing per-node parallelism. scale_out: growing node
/// count, parallelism one.
enum class ScalingAxis { scale_up, scale_out };
std::string_view to_string(ScalingAxis axis);
/// Throws Error(SuiteParse).
ScalingAxis parse_scaling_axis(std::string_view text);

/// Everything a suite holds fixed across its runs. Every run gets a fresh
/// simulated cloud built from `catalog`.
struct SuiteEnvironment {
  simcloud::Catalog catalog = simcloud::Catalog::builtin();
  simcloud::WorkloadProfile workload;
  std::uint64_t seed = 0;
  runtime::ExecutionMode mode = runtime::ExecutionMode::serverless;
  Seconds poll_window{10};
  simcloud::ClockMode clock = simcloud::ClockMode::deterministic;
};

/// Rewrites the first parallelism flag of `command`, or appends
/// `--parallelism <p>` when none is present.
std::string with_parallelism(std::string_view command, int parallelism);

/// `request` resized to `nodes` on its own provider, running `parallelism`
/// workers per node.
config::AbstractRequest with_shape(config::AbstractRequest request, int nodes, int parallelism);

/// Used share of the provisioned vCPUs: min(1, parallelism / vcpu).
double cpu_fraction(const config::AbstractRequest& request, const simcloud::Catalog& catalog);

/// One execute-and-measure cycle in a fresh world.
MetricReport run_and_measure(const config::AbstractRequest& request, const SuiteEnvironment& env,
                             const caam::AdapterRegistry& registry, bool history_enabled = true,
                             std::optional<runtime::ExecutionMode> mode = std::nullopt);

struct LevelResult {
  int level = 0;
  int nodes = 1;
  int parallelism = 1;
  std::optional<MetricReport> report;
  std::string error;  // set instead of `report` when the level failed
};

struct ScalingSuite {
  ScalingAxis axis = ScalingAxis::scale_up;
  std::vector<LevelResult> levels;
  bool complete() const;
  nlohmann::json to_json() const;
};

/// Levels run sequentially; a failing level is recorded and the rest still run.
/// Throws Error(InvalidArgument) for an empty or non-positive level list.
ScalingSuite run_scaling_suite(const config::AbstractRequest& request, ScalingAxis axis, std::span<const int> levels,
                               const SuiteEnvironment& env, const caam::AdapterRegistry& registry);

struct OverheadSuite {
  std::vector<MetricReport> with_history;
  std::vector<MetricReport> without_history;
  std::vector<OverheadRatio> ratios;  // pairwise, same seed
  OverheadRatio pooled;               // summed extra over summed baseline
  nlohmann::json to_json() const;
};

/// m6 over `repetitions` seeds (env.seed, env.seed + 1, ...).
OverheadSuite run_overhead_suite(const config::AbstractRequest& request, int repetitions, const SuiteEnvironment& env,
                                 const caam::AdapterRegistry& registry);

struct EfficiencySuite {
  std::vector<MetricReport> serverless;
  std::vector<MetricReport> sdk;
  EfficiencySummary summary;
  nlohmann::json to_json() const;
};

/// m7 over `repetitions` seeds; both modes see identical workloads. A
/// no-history serverless baseline feeds the overhead-reduction figure.
EfficiencySuite run_efficiency_suite(const config::AbstractRequest& request, int repetitions,
                                     const SuiteEnvironment& env, const caam::AdapterRegistry& registry);

enum class SuiteKind { scale_up, scale_out, overhead, efficiency };
std::string_view to_string(SuiteKind kind);

struct SuiteItem {
  SuiteKind kind = SuiteKind::scale_up;
  std::vector<int> levels;
};

/// A benchmark definition file, with request files resolved.
struct BenchSpec {
  config::AbstractRequest request;
  SuiteEnvironment env;
  int repetitions = 10;
  std::vector<SuiteItem> suites;
};

/// JSON bench file. Request paths are relative to `base_dir`. Throws
/// Error(SuiteParse) for structural problems; request parse errors propagate.
BenchSpec parse_bench_spec(const nlohmann::json& j, const std::filesystem::path& base_dir);
BenchSpec load_bench_spec(const std::filesystem::path& file);

struct BenchReport {
  std::vector<ScalingSuite> scaling;
  std::optional<OverheadSuite> overhead;
  std::optional<EfficiencySuite> efficiency;

  /// One JSON object per line: per-run reports, then one summary per suite.
  std::string to_jsonl() const;
  /// Fixed-width table with a stable column order.
  std::string to_table() const;
};

BenchReport run_bench(const BenchSpec& spec, const caam::AdapterRegistry& registry);

}  // namespace cloudrepro::metrics
