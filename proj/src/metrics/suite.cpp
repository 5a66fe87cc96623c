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

#include "cloudrepro/metrics/suite.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cloudrepro/config/parse.hpp"
#include "cloudrepro/core/error.hpp"
#include "cloudrepro/runtime/execute.hpp"

namespace cloudrepro::metrics {

namespace {

constexpr std::string_view kParallelismFlags[] = {"--parallelism", "--nthreads", "--executor-cores"};

[[noreturn]] void suite_error(const std::string& why) { throw Error(ErrorCode::SuiteParse, why); }

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SuiteEnvironment with_seed(SuiteEnvironment env, std::uint64_t offset) {
  env.seed += offset;
  return env;
}

}  // namespace

std::string_view to_string(ScalingAxis axis) { return axis == ScalingAxis::scale_up ? "scale_up" : "scale_out"; }

ScalingAxis parse_scaling_axis(std::string_view text) {
  if (text == "scale_up") return ScalingAxis::scale_up;
  if (text == "scale_out") return ScalingAxis::scale_out;
  suite_error("unknown scaling axis '" + std::string(text) + "'");
}

std::string_view to_string(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::scale_up: return "scale_up";
    case SuiteKind::scale_out: return "scale_out";
    case SuiteKind::overhead: return "overhead";
    case SuiteKind::efficiency: return "efficiency";
  }
  return "?";
}

std::string with_parallelism(std::string_view command, int parallelism) {
  auto words = split_words(command);
  const auto value = std::to_string(parallelism);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (auto flag : kParallelismFlags) {
      if (words[i] == flag && i + 1 < words.size()) {
        words[i + 1] = value;
      } else if (words[i].rfind(std::string(flag) + "=", 0) == 0) {
        words[i] = std::string(flag) + "=" + value;
      } else {
        continue;
      }
      std::string out;
      for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
      return out;
    }
  }
  std::string out(command);
  return out + (out.empty() ? "" : " ") + "--parallelism " + value;
}

config::AbstractRequest with_shape(config::AbstractRequest request, int nodes, int parallelism) {
  const auto& provider = request.personal.cloud_provider;
  if (provider == "aws" && request.resources.aws) request.resources.aws->instance_number = nodes;
  else if (provider == "azure" && request.resources.azure) request.resources.azure->instance_number = nodes;
  else if (auto it = request.resources.extras.find("cloud." + provider); it != request.resources.extras.end())
    it->second["instance_number"] = std::to_string(nodes);
  request.application.command = with_parallelism(request.application.command, parallelism);
  return request;
}

double cpu_fraction(const config::AbstractRequest& request, const simcloud::Catalog& catalog) {
  const auto& provider = request.personal.cloud_provider;
  const auto type = catalog.instance_type(provider, request.resources.instance_type(provider));
  const int p = simcloud::parallelism_from_command(request.application.command);
  return std::min(1.0, static_cast<double>(p) / static_cast<double>(type.spec.vcpu));
}

MetricReport run_and_measure(const config::AbstractRequest& request, const SuiteEnvironment& env,
                             const caam::AdapterRegistry& registry, bool history_enabled,
                             std::optional<runtime::ExecutionMode> mode) {
  simcloud::World world(env.catalog, env.clock);
  runtime::RuntimeOptions ro;
  ro.workload = env.workload;
  ro.workload_seed = env.seed;
  ro.history_enabled = history_enabled;
  runtime::ExecuteOptions eo;
  eo.mode = mode.value_or(env.mode);
  eo.poll_window = env.poll_window;
  const auto outcome = runtime::execute_request(world, request, registry, ro, eo);
  return measure(outcome, world.ledger(), cpu_fraction(request, env.catalog));
}

bool ScalingSuite::complete() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelResult& l) {
    return l.report && l.report->state == runtime::InstanceState::Completed;
  });
}

nlohmann::json ScalingSuite::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& l : levels) {
    nlohmann::json row = {{"level", l.level}, {"nodes", l.nodes}, {"parallelism", l.parallelism}, {"error", l.error}};
    row["report"] = l.report ? l.report->to_json() : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }
  return {{"axis", to_string(axis)}, {"complete", complete()}, {"levels", rows}};
}

ScalingSuite run_scaling_suite(const config::AbstractRequest& request, ScalingAxis axis, std::span<const int> levels,
                               const SuiteEnvironment& env, const caam::AdapterRegistry& registry) {
  if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "a scaling suite needs at least one level");
  if (std::any_of(levels.begin(), levels.end(), [](int l) { return l < 1; }))
    throw Error(ErrorCode::InvalidArgument, "scaling levels must be positive");
  ScalingSuite suite{axis, {}};
  for (int level : levels) {
    LevelResult r;
    r.level = level;
    r.nodes = axis == ScalingAxis::scale_up ? 1 : level;
    r.parallelism = axis == ScalingAxis::scale_up ? level : 1;
    try {
      r.report = run_and_measure(with_shape(request, r.nodes, r.parallelism), env, registry);
      if (r.report->state != runtime::InstanceState::Completed) r.error = "execution failed";
    } catch (const Error& e) {
      r.error = e.what();
    }
    suite.levels.push_back(std::move(r));
  }
  return suite;
}

nlohmann::json OverheadSuite::to_json() const {
  nlohmann::json per_run = nlohmann::json::array();
  for (std::size_t i = 0; i < ratios.size(); ++i)
    per_run.push_back({{"with_history_s", with_history[i].m1.count()},
                       {"without_history_s", without_history[i].m1.count()},
                       {"m6", ratios[i].value()}});
  return {{"runs", per_run},
          {"extra_s", pooled.extra.count()},
          {"baseline_s", pooled.baseline.count()},
          {"m6", pooled.value()},
          {"m6_percent", pooled.percent()}};
}

OverheadSuite run_overhead_suite(const config::AbstractRequest& request, int repetitions, const SuiteEnvironment& env,
                                 const caam::AdapterRegistry& registry) {
  if (repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be positive");
  OverheadSuite s;
  Seconds extra{0};
  Seconds baseline{0};
  for (int i = 0; i < repetitions; ++i) {
    const auto e = with_seed(env, static_cast<std::uint64_t>(i));
    s.with_history.push_back(run_and_measure(request, e, registry, true));
    s.without_history.push_back(run_and_measure(request, e, registry, false));
    s.ratios.push_back(reproducibility_overhead(s.with_history.back().m1, s.without_history.back().m1));
    extra += s.ratios.back().extra;
    baseline += s.ratios.back().baseline;
  }
  s.pooled = reproducibility_overhead(baseline + extra, baseline);
  return s;
}

nlohmann::json EfficiencySuite::to_json() const {
  nlohmann::json runs = nlohmann::json::array();
  for (std::size_t i = 0; i < serverless.size(); ++i)
    runs.push_back({{"serverless_s", serverless[i].m1.count()}, {"sdk_s", sdk[i].m1.count()}});
  return {{"runs", runs}, {"summary", summary.to_json()}};
}

EfficiencySuite run_efficiency_suite(const config::AbstractRequest& request, int repetitions,
                                     const SuiteEnvironment& env, const caam::AdapterRegistry& registry) {
  EfficiencySuite s;
  double baseline = 0;
  for (int i = 0; i < repetitions; ++i) {
    const auto e = with_seed(env, static_cast<std::uint64_t>(i));
    s.serverless.push_back(run_and_measure(request, e, registry, true, runtime::ExecutionMode::serverless));
    s.sdk.push_back(run_and_measure(request, e, registry, true, runtime::ExecutionMode::sdk));
    baseline += static_cast<double>(
        run_and_measure(request, e, registry, false, runtime::ExecutionMode::serverless).m1.count());
  }
  s.summary = efficiency_comparison(s.serverless, s.sdk,
                                    repetitions > 0 ? std::optional(baseline / repetitions) : std::nullopt);
  return s;
}

BenchSpec parse_bench_spec(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) suite_error("bench file must hold a JSON object");
  BenchSpec spec;
  try {
    const auto& req = j.at("request");
    for (const char* k : {"resources", "application", "personal"})
      if (!req.contains(k) || !req.at(k).is_string()) suite_error(std::string("request.") + k + " must name a file");
    auto path = [&](const char* k) { return base_dir / req.at(k).get<std::string>(); };
    spec.request =
        config::parse_abstract_request(read_text(path("resources")), read_text(path("application")),
                                       read_text(path("personal")))
            .request;
    if (j.contains("catalog")) spec.env.catalog = simcloud::Catalog::load(base_dir / j.at("catalog").get<std::string>());
    if (j.contains("storage_delay_s")) {
      const auto d = j.at("storage_delay_s").get<std::int64_t>();
      if (d < 0) suite_error("storage_delay_s must be nonnegative");
      spec.env.catalog.delays().storage_op = Seconds{d};
    }
    if (j.contains("workload")) spec.env.workload = simcloud::workload_profile_from_json(j.at("workload"));
    spec.env.seed = j.value("seed", std::uint64_t{0});
    spec.repetitions = j.value("repetitions", 10);
    if (spec.repetitions < 2) suite_error("repetitions must be at least 2");
    spec.env.poll_window = Seconds{j.value("poll_window", std::int64_t{10})};
    if (spec.env.poll_window <= Seconds{0}) suite_error("poll_window must be positive");
    spec.env.mode = runtime::parse_execution_mode(j.value("mode", std::string("serverless")));

    const auto& suites = j.at("suites");
    if (!suites.is_array() || suites.empty()) suite_error("suites must be a non-empty array");
    for (const auto& s : suites) {
      SuiteItem item;
      const auto kind = s.at("kind").get<std::string>();
      if (kind == "scale_up") item.kind = SuiteKind::scale_up;
      else if (kind == "scale_out") item.kind = SuiteKind::scale_out;
      else if (kind == "overhead") item.kind = SuiteKind::overhead;
      else if (kind == "efficiency") item.kind = SuiteKind::efficiency;
      else suite_error("unknown suite kind '" + kind + "'");
      if (item.kind == SuiteKind::scale_up || item.kind == SuiteKind::scale_out) {
        item.levels = s.at("levels").get<std::vector<int>>();
        if (item.levels.empty() || std::any_of(item.levels.begin(), item.levels.end(), [](int l) { return l < 1; }))
          suite_error(kind + " levels must be a non-empty list of positive integers");
      }
      spec.suites.push_back(std::move(item));
    }
  } catch (const nlohmann::json::exception& e) {
    suite_error(e.what());
  }
  return spec;
}

BenchSpec load_bench_spec(const std::filesystem::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(file));
  } catch (const nlohmann::json::parse_error& e) {
    suite_error(e.what());
  }
  return parse_bench_spec(j, file.parent_path());
}

BenchReport run_bench(const BenchSpec& spec, const caam::AdapterRegistry& registry) {
  BenchReport report;
  for (const auto& item : spec.suites) {
    switch (item.kind) {
      case SuiteKind::scale_up:
      case SuiteKind::scale_out:
        report.scaling.push_back(run_scaling_suite(
            spec.request, item.kind == SuiteKind::scale_up ? ScalingAxis::scale_up : ScalingAxis::scale_out,
            item.levels, spec.env, registry));
        break;
      case SuiteKind::overhead:
        report.overhead = run_overhead_suite(spec.request, spec.repetitions, spec.env, registry);
        break;
      case SuiteKind::efficiency:
        report.efficiency = run_efficiency_suite(spec.request, spec.repetitions, spec.env, registry);
        break;
    }
  }
  return report;
}

std::string BenchReport::to_jsonl() const {
  std::string out;
  auto line = [&](nlohmann::json j) { out += j.dump() + "\n"; };
  for (const auto& s : scaling) {
    for (const auto& l : s.levels) {
      nlohmann::json j = {{"suite", to_string(s.axis)}, {"level", l.level}, {"nodes", l.nodes},
                          {"parallelism", l.parallelism}, {"error", l.error}};
      j["report"] = l.report ? l.report->to_json() : nlohmann::json(nullptr);
      line(std::move(j));
    }
    line({{"suite", to_string(s.axis)}, {"summary", {{"levels", s.levels.size()}, {"complete", s.complete()}}}});
  }
  if (overhead) {
    for (std::size_t i = 0; i < overhead->ratios.size(); ++i) {
      line({{"suite", "overhead"}, {"history", true}, {"report", overhead->with_history[i].to_json()}});
      line({{"suite", "overhead"}, {"history", false}, {"report", overhead->without_history[i].to_json()}});
    }
    auto summary = overhead->to_json();
    summary.erase("runs");
    line({{"suite", "overhead"}, {"summary", summary}});
  }
  if (efficiency) {
    for (std::size_t i = 0; i < efficiency->serverless.size(); ++i) {
      line({{"suite", "efficiency"}, {"report", efficiency->serverless[i].to_json()}});
      line({{"suite", "efficiency"}, {"report", efficiency->sdk[i].to_json()}});
    }
    line({{"suite", "efficiency"}, {"summary", efficiency->summary.to_json()}});
  }
  return out;
}

std::string BenchReport::to_table() const {
  std::string out;
  char buf[256];
  auto row = [&](const char* suite, int level, int nodes, int par, const MetricReport& r) {
    std::snprintf(buf, sizeof buf, "%-10s %5d %5d %5d %-10s %-9s %8lld %9.4f %12.6f %12.6f %12.6f\n", suite, level,
                  nodes, par, std::string(runtime::to_string(r.mode)).c_str(),
                  std::string(runtime::to_string(r.state)).c_str(), static_cast<long long>(r.m1.count()),
                  r.m1_hours(), r.m2_dollars(), r.m3_ppr(), r.cost_by_usage.dollars());
    out += buf;
  };
  std::snprintf(buf, sizeof buf, "%-10s %5s %5s %5s %-10s %-9s %8s %9s %12s %12s %12s\n", "suite", "level", "nodes",
                "par", "mode", "state", "m1_s", "m1_h", "m2_usd", "m3_ppr", "usage_usd");
  out += buf;
  for (const auto& s : scaling)
    for (const auto& l : s.levels) {
      if (l.report) row(std::string(to_string(s.axis)).c_str(), l.level, l.nodes, l.parallelism, *l.report);
      else out += std::string(to_string(s.axis)) + " level " + std::to_string(l.level) + " failed: " + l.error + "\n";
    }
  if (overhead) {
    for (std::size_t i = 0; i < overhead->ratios.size(); ++i) {
      row("overhead", static_cast<int>(i), 0, 0, overhead->with_history[i]);
      row("baseline", static_cast<int>(i), 0, 0, overhead->without_history[i]);
    }
    std::snprintf(buf, sizeof buf, "m6 reproducibility overhead: %.4f%% (%lld s over %lld s)\n",
                  overhead->pooled.percent(), static_cast<long long>(overhead->pooled.extra.count()),
                  static_cast<long long>(overhead->pooled.baseline.count()));
    out += buf;
  }
  if (efficiency) {
    for (std::size_t i = 0; i < efficiency->serverless.size(); ++i) {
      row("efficiency", static_cast<int>(i), 0, 0, efficiency->serverless[i]);
      row("efficiency", static_cast<int>(i), 0, 0, efficiency->sdk[i]);
    }
    const auto& s = efficiency->summary;
    std::snprintf(buf, sizeof buf,
                  "m7 efficiency: serverless %.2f s, sdk %.2f s, reduction %.4f%%, t = %.6g, p(two-sided) = %.6g, "
                  "p(sdk slower) = %.6g\n",
                  s.mean_serverless_s, s.mean_sdk_s, s.time_reduction_pct, s.test.t, s.test.p_two_sided,
                  s.test.p_a_greater);
    out += buf;
  }
  return out;
}

}  // namespace cloudrepro::metrics
