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

// Acceptance run: twelve end-to-end criteria, each under a wall-clock limit.
// Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/core/error.hpp"
#include "cloudrepro/engines/security.hpp"
#include "cloudrepro/engines/topology.hpp"
#include "cloudrepro/history/store.hpp"
#include "cloudrepro/history/zip.hpp"
#include "cloudrepro/metrics/report.hpp"
#include "cloudrepro/metrics/stats.hpp"
#include "cloudrepro/metrics/suite.hpp"
#include "cloudrepro/reproducer/reproducer.hpp"
#include "cloudrepro/runtime/execute.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"
#include "support/security_scan.hpp"

namespace cloudrepro::acceptance {
namespace {

using testing::make_request;
using testing::TripleOptions;
using Failures = std::vector<std::string>;

// Tolerances and limits are fixed here, not taken from the code under test.
constexpr double kTTestRelativeTolerance = 1e-10;
constexpr Seconds kPollWindow{10};
constexpr int kModeEquivalenceWorkloads = 20;
constexpr int kRandomLedgers = 50;
constexpr int kMinSchedules = 1000;

const caam::AdapterRegistry& registry() {
  static const auto r = caam::AdapterRegistry::with_builtin_adapters();
  return r;
}

void expect(Failures& f, bool ok, const std::string& what) {
  if (!ok) f.push_back(what);
}

std::optional<ErrorCode> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

config::OverrideSet fresh(const std::string& provider, const std::string& access, const std::string& secret) {
  config::OverrideSet o;
  o.personal = testing::fresh_personal(provider, access, secret);
  if (provider != "aws") o.target_provider = provider;
  return o;
}

// 1 ---------------------------------------------------------------------------

Failures grammar() {
  Failures f;
  const auto corpus = testing::load_corpus(std::string(CLOUDREPRO_SOURCE_DIR) + "/tests/data/grammar_corpus.json");
  expect(f, corpus.size() >= 30, "corpus has fewer than 30 triples");
  std::set<std::string> labels;
  for (const auto& c : corpus) {
    const auto got = testing::classify(c);
    labels.insert(got.label);
    if (got.label != c.expect) f.push_back(c.name + ": expected " + c.expect + ", got " + got.label);
    if (got.label == "ok")
      for (const auto& m : testing::check_fields(c, got.parsed)) f.push_back(c.name + ": " + m);
  }
  expect(f, labels.contains("ok") && labels.size() > 1, "corpus lacks valid or invalid cases");

  auto accepts = [](const std::string& engine) {
    TripleOptions o;
    o.engine = engine;
    const auto t = testing::make_triple(o);
    try {
      config::parse_abstract_request(t.resources, t.application, t.personal);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  const std::set<std::string> engines = {"none", "spark", "horovod", "dask"};
  for (const auto& e : engines) expect(f, accepts(e), "engine " + e + " rejected");
  std::vector<std::string> probes = {"None", "SPARK", "Dask", "Horovod", "sparks", "das", "horovod2", "mpi",
                                     "ray", "hadoop", "spark dask", "spark,dask", "nonee", "none!", "0"};
  // Every lowercase word of one to three letters.
  std::string w;
  std::function<void(int)> words = [&](int depth) {
    if (depth == 0) {
      probes.push_back(w);
      return;
    }
    for (char c = 'a'; c <= 'z'; ++c) {
      w.push_back(c);
      words(depth - 1);
      w.pop_back();
    }
  };
  for (int len = 1; len <= 3; ++len) words(len);
  for (const auto& p : probes)
    if (!engines.contains(p) && accepts(p)) f.push_back("engine '" + p + "' accepted");
  return f;
}

// 2 ---------------------------------------------------------------------------

// Service names per provider, written out as literals.
const std::map<std::string, std::map<std::string, std::string>> kServiceCells = {
    {"aws",
     {{"virtual_cluster", "EC2 Auto Scaling/EMR"},
      {"virtual_network", "VPN"},
      {"container_service", "ECR"},
      {"object_storage", "S3"},
      {"database", "DynamoDB"},
      {"serverless", "CloudFormation & Lambda Functions"},
      {"cloud_sdk", "Boto/Boto3"},
      {"authentication", "AWS IAM"}}},
    {"azure",
     {{"virtual_cluster", "Virtual Machine Scale Set/HDInsight"},
      {"virtual_network", "Virtual Network"},
      {"container_service", "Azure Container Registry"},
      {"object_storage", "Blob storage"},
      {"database", "CosmosDB"},
      {"serverless", "Deployment Manager & Azure Functions"},
      {"cloud_sdk", ".NET Core"},
      {"authentication", "Azure IAM"}}},
};

Failures caam_dispatch() {
  Failures f;
  TripleOptions o;
  o.azure_block = true;
  std::map<std::string, nlohmann::json> docs;
  for (const std::string provider : {"aws", "azure"}) {
    o.provider = provider;
    const auto doc = caam::generate_pipeline(make_request(o), registry()).to_json();
    docs[provider] = doc;
    for (const auto& problem : caam::check_pipeline_document(doc)) f.push_back(provider + ": " + problem);
    expect(f, doc.at("provider") == provider, provider + ": wrong provider field");
    const auto& services = doc.at("executable").at("resources").at("services");
    expect(f, services.size() == kServiceCells.at(provider).size(), provider + ": service count");
    for (const auto& [category, name] : kServiceCells.at(provider))
      expect(f, services.value(category, "") == name, provider + ": " + category + " is " + services.value(category, "?"));
    expect(f, doc.at("provisioning").at("service") == kServiceCells.at(provider).at("virtual_cluster"),
           provider + ": provisioning service");
  }
  expect(f, docs["aws"]["executable"]["application"] == docs["azure"]["executable"]["application"],
         "application payload differs across providers");
  // The grammar admits no gcloud block, so the request is edited after parsing.
  auto gcloud = make_request(o);
  gcloud.personal.cloud_provider = "gcloud";
  expect(f, code_of([&] { caam::generate_pipeline(gcloud, registry()); }) == ErrorCode::UnsupportedProvider,
         "gcloud is not rejected as unsupported");
  return f;
}

// 3 ---------------------------------------------------------------------------

Failures lifecycle_model_check() {
  Failures f;
  const auto req = make_request();
  const auto doc = caam::generate_pipeline(req, registry());

  // Harvest the stage events of a reference run.
  std::vector<simcloud::CloudEvent> harvested;
  std::string id;
  {
    simcloud::World world;
    runtime::RuntimeOptions opts;
    opts.capture_events = true;
    runtime::PipelineRuntime rt(world, opts);
    id = rt.deploy(doc, runtime::stage_execution(req)).instance_id;
    rt.start(id);
    const std::string part = std::string(caam::kExportPrefix) + "/" + id + "/part-00000";
    const std::set<std::string> wanted = {std::string(caam::event_name::hardware_env_ready),
                                          std::string(caam::event_name::software_env_ready), part,
                                          std::string(caam::event_name::export_complete),
                                          std::string(caam::event_name::resources_terminated)};
    while (true) {
      world.scheduler().run_until_idle();
      auto events = rt.take_outbox();
      if (events.empty()) break;
      for (const auto& e : events) {
        if (wanted.contains(e.name)) harvested.push_back(e);
        rt.dispatch(e);
      }
    }
    if (harvested.size() != 5) return {"reference run produced " + std::to_string(harvested.size()) + " stage events"};
  }
  const simcloud::CloudEvent stray{"stray-1", "cluster-manager/exec-999",
                                   std::string(caam::event_name::hardware_env_ready), {}, at_second(0)};
  constexpr int kStray = 5;

  const std::vector<std::string> order(caam::kFunctionOrder.begin(), caam::kFunctionOrder.end());
  // Index 1 appears twice (a duplicate delivery); 7!/2! = 2520 distinct schedules.
  std::vector<int> perm = {0, 1, 1, 2, 3, 4, kStray};
  int schedules = 0;
  do {
    ++schedules;
    simcloud::World world;
    runtime::RuntimeOptions opts;
    opts.capture_events = true;
    runtime::PipelineRuntime rt(world, opts);
    const auto run_id = rt.deploy(doc, runtime::stage_execution(req)).instance_id;
    rt.start(run_id);
    auto check_prefix = [&] {
      const auto& inv = rt.instance(run_id).invocations;
      if (inv.size() > order.size()) return false;
      for (std::size_t i = 0; i < inv.size(); ++i)
        if (inv[i].function != order[i]) return false;
      return true;
    };
    bool ok = run_id == id;
    for (int idx : perm) {
      rt.dispatch(idx == kStray ? stray : harvested[idx]);
      world.scheduler().run_until_idle();
      ok = ok && check_prefix();
    }
    for (int guard = 0; guard < 64; ++guard) {
      world.scheduler().run_until_idle();
      auto events = rt.take_outbox();
      if (events.empty()) break;
      for (const auto& e : events) {
        rt.dispatch(e);
        ok = ok && check_prefix();
      }
    }
    const auto& inst = rt.instance(run_id);
    ok = ok && inst.invocations.size() == order.size() && inst.state == runtime::InstanceState::Completed &&
         world.live_resources().empty() && !world.ledger().has_open_entries();
    if (!ok && f.size() < 5) {
      std::string s;
      for (int idx : perm) s += std::to_string(idx);
      f.push_back("schedule " + s + " ended in " + std::string(to_string(inst.state)) + " after " +
                  std::to_string(inst.invocations.size()) + " invocations, " +
                  std::to_string(world.live_resources().size()) + " live resources");
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  expect(f, schedules >= kMinSchedules, "only " + std::to_string(schedules) + " schedules");
  return f;
}

// 4 ---------------------------------------------------------------------------

std::string result_zip(simcloud::World& world, const std::string& url) {
  return history::HistoryStore::fetch_execution(world, url).second.result_zip;
}

Failures reproduction_fixpoint() {
  Failures f;
  nlohmann::json cloud;
  std::string url;
  std::string expected_text;
  {
    // Client session one: run, then forget everything but the URL.
    simcloud::World world;
    const auto original = make_request();
    expected_text = caam::generate_pipeline(original, registry()).canonical_text();
    const auto out = runtime::execute_request(world, original, registry(), runtime::RuntimeOptions{});
    if (!out.history_url) return {"original run stored no history"};
    url = out.history_url->to_string();
    cloud = world.snapshot();
  }
  // Client session two: only the cloud's persistent state survives.
  const auto world = simcloud::World::restore(cloud);
  runtime::PipelineRuntime rt(*world, {});
  const auto same = fresh("aws", "AKIAFRESHSESSION", "fresh-session-secret");
  const auto regenerated = reproducer::regenerate_pipeline(reproducer::load_ancestor(*world, url), same, registry());
  expect(f, regenerated.canonical_text() == expected_text, "regenerated document differs from the original");
  const auto r = reproducer::reproduce(rt, url, same, registry());
  expect(f, r.document.canonical_text() == expected_text, "reproduced run deployed a different document");
  if (r.outcome.state != runtime::InstanceState::Completed || !r.outcome.history_url) {
    f.push_back("reproduction did not complete: " + r.outcome.failure);
    return f;
  }
  expect(f, result_zip(*world, r.outcome.history_url->to_string()) == result_zip(*world, url),
         "result objects differ");
  return f;
}

// 5 ---------------------------------------------------------------------------

void diff_paths(const nlohmann::json& a, const nlohmann::json& b, const std::string& at, std::set<std::string>& out) {
  if (a.is_object() && b.is_object()) {
    std::set<std::string> keys;
    for (const auto& [k, v] : a.items()) keys.insert(k);
    for (const auto& [k, v] : b.items()) keys.insert(k);
    for (const auto& k : keys) {
      const auto sub = at.empty() ? k : at + "." + k;
      if (!a.contains(k) || !b.contains(k))
        out.insert(sub);
      else
        diff_paths(a[k], b[k], sub, out);
    }
  } else if (a != b) {
    out.insert(at);
  }
}

Failures cross_cloud() {
  Failures f;
  simcloud::World world;
  runtime::PipelineRuntime rt(world, {});
  const auto original = make_request();
  const auto out = runtime::execute_request(rt, original, registry());
  if (!out.history_url) return {"original run stored no history"};
  const auto url = out.history_url->to_string();
  const auto r = reproducer::reproduce(rt, url, fresh("azure", "AKIAAZURE", "azure-secret"), registry());
  expect(f, r.outcome.state == runtime::InstanceState::Completed, "azure run failed: " + r.outcome.failure);

  std::set<std::string> changed;
  diff_paths(caam::generate_pipeline(original, registry()).to_json(), r.document.to_json(), "", changed);
  // Provider-specific material only: the resources and personal documents and
  // the service names (the provisioning block restates resources fields).
  const std::set<std::string> allowed_prefixes = {"provider", "executable.resources", "executable.personal",
                                                  "provisioning.service", "provisioning.region",
                                                  "provisioning.instance_type"};
  for (const auto& p : changed) {
    const bool ok = std::any_of(allowed_prefixes.begin(), allowed_prefixes.end(), [&](const std::string& a) {
      return p == a || p.rfind(a + ".", 0) == 0;
    });
    expect(f, ok, "unexpected change at " + p);
  }
  expect(f, changed.contains("executable.resources.services.virtual_cluster"), "service names unchanged");
  const auto reproduced = r.document.to_json();
  const auto& services = reproduced.at("executable").at("resources").at("services");
  for (const auto& [category, name] : kServiceCells.at("azure"))
    expect(f, services.value(category, "") == name, "azure " + category + " service name");
  if (r.outcome.history_url) {
    expect(f, reproducer::lineage(world, r.outcome.history_url->to_string()) == std::vector<std::string>{url},
           "lineage not recorded");
    expect(f, r.outcome.history_url->provider == "azure", "history stored outside azure");
  }
  return f;
}

// 6 ---------------------------------------------------------------------------

nlohmann::json record_without_timing(history::ExecutionRecord r) {
  auto j = r.to_json();
  // Cost is time-derived: a longer run on the same resources costs more.
  for (const char* k : {"submit_time", "start_time", "end_time", "duration_s", "cost", "cost_ticks", "stage_timings"})
    j.erase(k);
  return j;
}

Failures mode_equivalence() {
  Failures f;
  for (int seed = 0; seed < kModeEquivalenceWorkloads; ++seed) {
    runtime::RuntimeOptions opts;
    opts.workload_seed = static_cast<std::uint64_t>(seed);
    opts.workload.jitter = 0.25;
    opts.workload.serial_s = 5 + seed;
    opts.workload.parallel_s = 50 + 13 * seed;
    simcloud::World a, b;
    const auto serverless = runtime::execute_request(a, make_request(), registry(), opts);
    runtime::ExecuteOptions sdk_opts;
    sdk_opts.mode = runtime::ExecutionMode::sdk;
    sdk_opts.poll_window = kPollWindow;
    const auto sdk = runtime::execute_request(b, make_request(), registry(), opts, sdk_opts);
    const auto tag = "seed " + std::to_string(seed) + ": ";
    if (!serverless.record || !sdk.record) {
      f.push_back(tag + "missing record");
      continue;
    }
    const auto lhs = record_without_timing(*serverless.record), rhs = record_without_timing(*sdk.record);
    expect(f, lhs == rhs, tag + "terminal records differ beyond timing: " + nlohmann::json::diff(lhs, rhs).dump());
    // Residue oracle: each stage the client polls ends on the next window boundary.
    std::int64_t residue = 0;
    const auto w = kPollWindow.count();
    for (const auto& t : serverless.stage_timings) {
      const auto d = t.duration().count();
      residue += (d + w - 1) / w * w - d;
    }
    expect(f, sdk.total().count() - serverless.total().count() == residue,
           tag + "sdk - serverless = " + std::to_string(sdk.total().count() - serverless.total().count()) +
               ", residues = " + std::to_string(residue));
  }
  return f;
}

// 7 ---------------------------------------------------------------------------

Failures metrics_arithmetic() {
  Failures f;
  std::vector<metrics::MetricReport> reports;
  metrics::SuiteEnvironment env;
  const std::vector<int> levels{1, 2, 4};
  for (auto axis : {metrics::ScalingAxis::scale_up, metrics::ScalingAxis::scale_out})
    for (const auto& l : metrics::run_scaling_suite(make_request(), axis, levels, env, registry()).levels)
      if (l.report) reports.push_back(*l.report);
  const auto overhead = metrics::run_overhead_suite(make_request(), 2, env, registry());
  reports.insert(reports.end(), overhead.with_history.begin(), overhead.with_history.end());
  reports.insert(reports.end(), overhead.without_history.begin(), overhead.without_history.end());
  for (const auto& r : reports)
    expect(f, r.m3 == static_cast<metrics::SecondTicks>(r.m1.count()) * r.m2.ticks(), r.instance_id + ": m3 != m1*m2");
  expect(f, reports.size() == 10, "expected 10 reports");

  expect(f, simcloud::cost_by_usage(Money::from_dollars(8), 0.25) == Money::from_dollars(2),
         "cost_by_usage(8, 0.25) != 2");

  std::mt19937_64 rng(2024);
  for (int n = 0; n < kRandomLedgers; ++n) {
    simcloud::CostLedger ledger(simcloud::RequestPrices{{static_cast<std::int64_t>(rng() % 50)},
                                                        {static_cast<std::int64_t>(rng() % 50)},
                                                        {static_cast<std::int64_t>(rng() % 50)},
                                                        {static_cast<std::int64_t>(rng() % 50)},
                                                        {static_cast<std::int64_t>(rng() % 50)}});
    const SimTime at = at_second(static_cast<std::int64_t>(500 + rng() % 500));
    const int entries = 1 + static_cast<int>(rng() % 12);
    for (int e = 0; e < entries; ++e) {
      const auto opened = static_cast<std::int64_t>(rng() % 600);
      const auto id = "r" + std::to_string(e);
      ledger.open(id, "o" + std::to_string(e % 3), simcloud::UsageCategory::compute,
                  HourlyPrice{static_cast<std::int64_t>(rng() % 5'000'000'000)}, at_second(opened));
      if (rng() % 3) ledger.close(id, at_second(opened + static_cast<std::int64_t>(rng() % 900)));
    }
    for (int k = 0; k < 5; ++k)
      ledger.count_request(static_cast<simcloud::RequestKind>(rng() % 5), "o" + std::to_string(k % 3),
                           static_cast<std::int64_t>(rng() % 40));
    // Brute force, one second at a time, in 128-bit arithmetic.
    __int128 ticks = 0;
    for (const auto& e : ledger.entries()) {
      const auto end = std::min(to_seconds(e.closed.value_or(at)), to_seconds(at));
      for (auto s = to_seconds(e.opened); s < end; ++s) ticks += e.price.nanodollars_per_hour;
    }
    for (const auto& [key, count] : ledger.request_counts())
      ticks += static_cast<__int128>(count) * ledger.prices().of(key.second).nanodollars * 3600;
    expect(f, static_cast<__int128>(simcloud::compute_cost(ledger, at).ticks()) == ticks,
           "ledger " + std::to_string(n) + " disagrees with per-second integration");
  }
  return f;
}

// 8 ---------------------------------------------------------------------------

Failures overhead_harness() {
  Failures f;
  for (std::int64_t delay : {0, 1, 2, 5}) {
    metrics::SuiteEnvironment env;
    env.catalog.delays().storage_op = Seconds{delay};
    const auto s = metrics::run_overhead_suite(make_request(), 3, env, registry());
    // Closed form: config and result archives, one new input object, the
    // record write and its final update, each one storage delay.
    const std::int64_t storage_writes = 2 + 1 + 1 + 1;
    for (std::size_t i = 0; i < s.ratios.size(); ++i) {
      const metrics::OverheadRatio predicted{Seconds{storage_writes * delay}, s.without_history[i].m1};
      expect(f, s.ratios[i].same_ratio(predicted),
             "delay " + std::to_string(delay) + ": m6 = " + std::to_string(s.ratios[i].extra.count()) + "/" +
                 std::to_string(s.ratios[i].baseline.count()));
    }
    if (delay == 0) expect(f, s.pooled.value() == 0.0, "m6 nonzero with zero storage delay");
  }
  return f;
}

// 9 ---------------------------------------------------------------------------

Failures scaling_trends() {
  Failures f;
  TripleOptions o;
  o.aws_type = "c5d.4xlarge";  // 16 vCPU, room for 8 workers per node
  const auto req = make_request(o);
  metrics::SuiteEnvironment env;
  env.workload.parallel_s = 400;
  env.workload.per_node_comm_s = 20;
  const std::vector<int> levels{1, 2, 4, 8};
  const auto up = metrics::run_scaling_suite(req, metrics::ScalingAxis::scale_up, levels, env, registry());
  const auto out = metrics::run_scaling_suite(req, metrics::ScalingAxis::scale_out, levels, env, registry());
  if (!up.complete() || !out.complete()) return {"a scaling level failed"};
  for (std::size_t i = 1; i < levels.size(); ++i) {
    expect(f, up.levels[i].report->m1 <= up.levels[i - 1].report->m1,
           "scale-up m1 rises at level " + std::to_string(levels[i]));
    expect(f, out.levels[i].report->m2 >= out.levels[i - 1].report->m2,
           "scale-out m2 falls at level " + std::to_string(levels[i]));
    expect(f, up.levels[i].report->m1 < out.levels[i].report->m1,
           "scale-up does not beat scale-out at parallelism " + std::to_string(levels[i]));
  }
  return f;
}

// 10 --------------------------------------------------------------------------

Failures security_policy() {
  Failures f;
  for (auto engine : {engines::Engine::spark, engines::Engine::dask, engines::Engine::horovod})
    for (int n : {1, 2, 3, 5, 16}) {
      const auto t = engines::assign_roles(engine, n);
      for (const auto& v : testing::scan_security_policy(t, engines::build_security_groups(t)))
        f.push_back(std::string(config::to_string(engine)) + " x" + std::to_string(n) + ": " + v);
    }
  return f;
}

// 11 --------------------------------------------------------------------------

double rel_err(double a, double b) {
  if (a == b) return 0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

Failures t_test() {
  Failures f;
  std::mt19937_64 rng(99);
  for (int k = 0; k < 10; ++k) {
    std::normal_distribution<double> a_dist(100, 1 + k), b_dist(100 + 0.7 * k, 2 + 0.5 * k);
    std::vector<double> a, b;
    for (int i = 0; i < 3 + k; ++i) a.push_back(a_dist(rng));
    for (int i = 0; i < 2 + 2 * k % 7; ++i) b.push_back(b_dist(rng));
    // Reference: textbook pooled statistic, distribution tail from Boost.
    auto mean = [](const std::vector<double>& v) {
      long double s = 0;
      for (double x : v) s += x;
      return static_cast<double>(s / v.size());
    };
    auto ss = [&](const std::vector<double>& v) {
      const double m = mean(v);
      long double s = 0;
      for (double x : v) s += (x - m) * (x - m);
      return static_cast<double>(s);
    };
    const double na = a.size(), nb = b.size(), df = na + nb - 2;
    const double t_ref = (mean(a) - mean(b)) / std::sqrt((ss(a) + ss(b)) / df * (1 / na + 1 / nb));
    const double p_ref = 2 * boost::math::cdf(boost::math::complement(boost::math::students_t(df), std::fabs(t_ref)));
    const auto r = metrics::pooled_t_test(a, b);
    expect(f, rel_err(r.t, t_ref) <= kTTestRelativeTolerance, "fixture " + std::to_string(k) + ": t");
    expect(f, rel_err(r.p_two_sided, p_ref) <= kTTestRelativeTolerance, "fixture " + std::to_string(k) + ": p");
    expect(f, r.degrees_of_freedom == df, "fixture " + std::to_string(k) + ": df");
  }
  const std::vector<double> same{4.5, 7.25, 1.0, 9.5};
  expect(f, metrics::pooled_t_test(same, same).t == 0.0, "identical samples give t != 0");
  return f;
}

// 12 --------------------------------------------------------------------------

std::string random_secret(std::mt19937_64& rng, int length) {
  static const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789/+=";
  std::string s;
  for (int i = 0; i < length; ++i) s += alphabet[rng() % alphabet.size()];
  return s;
}

Failures redaction() {
  Failures f;
  std::mt19937_64 rng(31337);
  std::vector<std::string> secrets;
  for (int i = 0; i < 6; ++i) secrets.push_back(random_secret(rng, 24));

  simcloud::World world;
  runtime::PipelineRuntime rt(world, {});
  TripleOptions o;
  o.access_key = secrets[0];
  o.secret_key = secrets[1];
  const auto out = runtime::execute_request(rt, make_request(o), registry());
  if (!out.history_url) return {"original run stored no history"};
  const auto url = out.history_url->to_string();
  const auto same = reproducer::reproduce(rt, url, fresh("aws", secrets[2], secrets[3]), registry());
  const auto cross = reproducer::reproduce(rt, url, fresh("azure", secrets[4], secrets[5]), registry());
  expect(f, same.outcome.state == runtime::InstanceState::Completed, "same-cloud reproduction failed");
  expect(f, cross.outcome.state == runtime::InstanceState::Completed, "cross-cloud reproduction failed");

  // Every stored byte stream: object versions (and the entries of any
  // archive among them), database items, events, ledger and the snapshot.
  std::vector<std::pair<std::string, std::string>> streams;
  for (const std::string provider : {"aws", "azure"}) {
    world.storage(provider).for_each_version([&](auto bucket, auto key, const simcloud::ObjectVersion& v) {
      const auto where = provider + ":" + std::string(bucket) + "/" + std::string(key);
      streams.emplace_back(where, v.bytes);
      try {
        for (const auto& e : history::read_zip(v.bytes)) streams.emplace_back(where + "!" + e.name, e.bytes);
      } catch (const Error&) {
      }
    });
    streams.emplace_back(provider + ":database", world.database(provider).to_json().dump());
  }
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : world.event_log()) events.push_back(simcloud::to_json(e));
  streams.emplace_back("events", events.dump());
  streams.emplace_back("ledger", world.ledger().to_json().dump());
  streams.emplace_back("snapshot", world.snapshot().dump());
  expect(f, streams.size() > 10, "too few streams scanned");
  for (const auto& [where, bytes] : streams)
    for (const auto& s : secrets)
      if (bytes.find(s) != std::string::npos) f.push_back("secret found in " + where);
  return f;
}

struct Criterion {
  int number;
  const char* name;
  double limit_s;
  Failures (*run)();
};

}  // namespace
}  // namespace cloudrepro::acceptance

int main() {
  using namespace cloudrepro::acceptance;
  const Criterion criteria[] = {
      {1, "grammar conformance", 1, grammar},
      {2, "adapter dispatch and portability", 1, caam_dispatch},
      {3, "lifecycle model check", 30, lifecycle_model_check},
      {4, "reproduction fixpoint", 5, reproduction_fixpoint},
      {5, "cross-cloud reproduction", 5, cross_cloud},
      {6, "mode equivalence and polling residue", 10, mode_equivalence},
      {7, "metrics arithmetic", 5, metrics_arithmetic},
      {8, "reproducibility overhead", 5, overhead_harness},
      {9, "scaling trends", 10, scaling_trends},
      {10, "security policy", 1, security_policy},
      {11, "t-test", 1, t_test},
      {12, "credential redaction", 5, redaction},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Failures f;
    try {
      f = c.run();
    } catch (const std::exception& e) {
      f.push_back(std::string("threw: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= c.limit_s)
      f.push_back("took " + std::to_string(elapsed) + "s, limit " + std::to_string(c.limit_s) + "s");
    std::printf("%s %2d %-40s %7.3fs (limit %gs)\n", f.empty() ? "PASS" : "FAIL", c.number, c.name, elapsed,
                c.limit_s);
    for (std::size_t i = 0; i < f.size() && i < 8; ++i) std::printf("       - %s\n", f[i].c_str());
    if (f.size() > 8) std::printf("       - ... %zu more\n", f.size() - 8);
    failed += !f.empty();
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
