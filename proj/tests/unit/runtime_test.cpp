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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/history/store.hpp"
#include "cloudrepro/runtime/execute.hpp"
#include "support/fixtures.hpp"

namespace cloudrepro::runtime {
namespace {

using testing::make_request;
using testing::TripleOptions;

const caam::AdapterRegistry& registry() {
  static const auto r = caam::AdapterRegistry::with_builtin_adapters();
  return r;
}

// Stage durations predicted from the default delays and workload profile,
// written out independently of the runtime.
struct Expected {
  std::int64_t provisioning = 30;
  std::int64_t setup = 10;
  std::int64_t analytics = 0;
  std::int64_t export_ = 0;
  std::int64_t termination = 0;
  std::int64_t total() const { return provisioning + setup + analytics + export_ + termination; }
};

Expected expected_for(int nodes, int threads, int bootstrap, int new_inputs, bool history) {
  Expected e;
  const double work = 10.0 + 100.0 / (nodes * threads) + 2.0 * (nodes - 1);
  e.analytics = 2 * bootstrap + static_cast<std::int64_t>(std::ceil(work));
  e.export_ = history ? 2 + new_inputs + 1 : 0;
  e.termination = history ? 5 + 1 : 5;
  return e;
}

std::int64_t stage_length(const ExecutionOutcome& o, std::string_view stage) {
  for (const auto& t : o.stage_timings)
    if (t.stage == stage) return t.duration().count();
  ADD_FAILURE() << "missing stage " << stage;
  return -1;
}

TEST(PipelineRuntime, ServerlessRunFollowsTheLifecycle) {
  simcloud::World world;
  const auto out = execute_request(world, make_request(), registry(), RuntimeOptions{});
  ASSERT_EQ(out.state, InstanceState::Completed) << out.failure;

  const auto e = expected_for(2, 2, 0, 1, true);
  EXPECT_EQ(stage_length(out, stage::provisioning), e.provisioning);
  EXPECT_EQ(stage_length(out, stage::software_setup), e.setup);
  EXPECT_EQ(stage_length(out, stage::analytics), e.analytics);
  EXPECT_EQ(stage_length(out, stage::export_history), e.export_);
  EXPECT_EQ(stage_length(out, stage::termination), e.termination);
  EXPECT_EQ(out.total().count(), e.total());

  EXPECT_TRUE(world.live_resources().empty());
  EXPECT_FALSE(world.ledger().has_open_entries());
  ASSERT_TRUE(out.record);
  EXPECT_EQ(out.record->status, history::RecordStatus::Completed);
  ASSERT_TRUE(out.history_url);
  EXPECT_EQ(out.history_url->provider, "aws");
}

TEST(PipelineRuntime, FunctionsRunOnceInCausalOrder) {
  simcloud::World world;
  PipelineRuntime rt(world, {});
  const auto out = execute_request(rt, make_request(), registry());
  const auto& inst = rt.instance(out.instance_id);
  std::vector<std::string> order;
  for (const auto& i : inst.invocations) order.push_back(i.function);
  EXPECT_EQ(order, std::vector<std::string>(caam::kFunctionOrder.begin(), caam::kFunctionOrder.end()));
  // Serverless functions are billed per invocation.
  EXPECT_EQ(world.ledger().request_count(simcloud::RequestKind::function_invocation), 4);
  // Asynchronous delivery means the happy path never parks an event.
  for (const auto& entry : inst.event_log) EXPECT_NE(entry.action, EventAction::parked);
}

TEST(PipelineRuntime, RecordIsQueryableAndFetchable) {
  simcloud::World world;
  const auto out = execute_request(world, make_request(), registry(), RuntimeOptions{});
  ASSERT_TRUE(out.history_url);
  const auto [record, bundle] = history::HistoryStore::fetch_execution(world, *out.history_url);
  EXPECT_EQ(record.execution_id, out.instance_id);
  EXPECT_EQ(record.status, history::RecordStatus::Completed);
  EXPECT_EQ(record.parameters.at("command"), "python train.py --nthreads 2");
  EXPECT_EQ(record.output_urls.size(), 3u);
  EXPECT_FALSE(bundle.config_zip.empty());
  EXPECT_FALSE(bundle.result_zip.empty());
}

TEST(PipelineRuntime, BootstrapCommandsExtendAnalytics) {
  simcloud::World world;
  TripleOptions o;
  o.bootstrap = {"pip install numpy", "pip install pandas"};
  const auto out = execute_request(world, make_request(o), registry(), RuntimeOptions{});
  EXPECT_EQ(stage_length(out, stage::analytics), expected_for(2, 2, 2, 1, true).analytics);
}

TEST(PipelineRuntime, DisabledHistoryWritesNothing) {
  simcloud::World world;
  RuntimeOptions opts;
  opts.history_enabled = false;
  const auto out = execute_request(world, make_request(), registry(), opts);
  ASSERT_EQ(out.state, InstanceState::Completed);
  EXPECT_EQ(out.total().count(), expected_for(2, 2, 0, 1, false).total());
  EXPECT_FALSE(out.record);
  EXPECT_EQ(world.ledger().request_count(simcloud::RequestKind::db_write), 0);
}

TEST(PipelineRuntime, SdkModeAddsPollingResidueOnly) {
  for (std::int64_t window : {1, 7, 10, 60}) {
    simcloud::World a;
    simcloud::World b;
    const auto serverless = execute_request(a, make_request(), registry(), RuntimeOptions{});
    ExecuteOptions sdk_opts;
    sdk_opts.mode = ExecutionMode::sdk;
    sdk_opts.poll_window = Seconds{window};
    const auto sdk = execute_request(b, make_request(), registry(), RuntimeOptions{}, sdk_opts);
    ASSERT_EQ(sdk.state, InstanceState::Completed);

    std::int64_t residue = 0;
    for (const auto& t : serverless.stage_timings) {
      const auto d = t.duration().count();
      residue += (d + window - 1) / window * window - d;
    }
    EXPECT_EQ(sdk.total().count() - serverless.total().count(), residue) << "window " << window;
    EXPECT_EQ(b.ledger().request_count(simcloud::RequestKind::function_invocation), 0);
    EXPECT_TRUE(b.live_resources().empty());
  }
}

TEST(PipelineRuntime, AnalyticsFailureTerminatesAndRecordsFailure) {
  for (auto mode : {ExecutionMode::serverless, ExecutionMode::sdk}) {
    simcloud::World world;
    RuntimeOptions opts;
    opts.workload.exit_code = 3;
    ExecuteOptions exec;
    exec.mode = mode;
    const auto out = execute_request(world, make_request(), registry(), opts, exec);
    EXPECT_EQ(out.state, InstanceState::Failed);
    EXPECT_NE(out.failure.find("status 3"), std::string::npos);
    EXPECT_TRUE(world.live_resources().empty());
    EXPECT_FALSE(world.ledger().has_open_entries());
    ASSERT_TRUE(out.record);
    EXPECT_EQ(out.record->status, history::RecordStatus::Failed);
  }
}

TEST(PipelineRuntime, ProvisioningFaultLeavesNothingRunning) {
  simcloud::World world;
  world.faults().fail_always(simcloud::op::provision_cluster, ErrorCode::QuotaExceeded);
  const auto out = execute_request(world, make_request(), registry(), RuntimeOptions{});
  EXPECT_EQ(out.state, InstanceState::Failed);
  EXPECT_TRUE(world.live_resources().empty());
}

TEST(PipelineRuntime, StorageFaultDuringExportFails) {
  simcloud::World world;
  world.faults().fail_always(simcloud::op::db_put, ErrorCode::StorageFailure);
  const auto out = execute_request(world, make_request(), registry(), RuntimeOptions{});
  EXPECT_EQ(out.state, InstanceState::Failed);
  EXPECT_TRUE(world.live_resources().empty());
  EXPECT_FALSE(world.ledger().has_open_entries());
}

TEST(PipelineRuntime, DeployRejectsOversizedCluster) {
  simcloud::World world;
  PipelineRuntime rt(world, {});
  TripleOptions o;
  o.nodes = 65;
  const auto req = make_request(o);
  const auto doc = caam::generate_pipeline(req, registry());
  try {
    rt.deploy(doc, stage_execution(req));
    FAIL() << "expected rejection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DeploymentRejected);
  }
}

TEST(PipelineRuntime, DuplicateAndEarlyEventsAreHandled) {
  simcloud::World world;
  RuntimeOptions opts;
  opts.capture_events = true;
  PipelineRuntime rt(world, opts);
  const auto req = make_request();
  const auto id = rt.deploy(caam::generate_pipeline(req, registry()), stage_execution(req)).instance_id;

  // A forged early SoftwareEnvReady parks until setup really finishes.
  simcloud::CloudEvent early{"forged-1", caam::function_source(id, caam::function_name::software_env_setup),
                             std::string(caam::event_name::software_env_ready), {}, world.now()};
  rt.start(id);
  EXPECT_TRUE(rt.dispatch(early).empty());
  EXPECT_EQ(rt.instance(id).parked.size(), 1u);
  EXPECT_TRUE(rt.dispatch(early).empty());  // duplicate id

  while (true) {
    world.scheduler().run_until_idle();
    auto events = rt.take_outbox();
    if (events.empty()) break;
    for (const auto& e : events) {
      rt.dispatch(e);
      rt.dispatch(e);  // at-least-once delivery
    }
  }
  const auto& inst = rt.instance(id);
  EXPECT_EQ(inst.state, InstanceState::Completed);
  EXPECT_EQ(inst.invocations.size(), 4u);
  const auto count = [&](EventAction a) {
    return std::count_if(inst.event_log.begin(), inst.event_log.end(), [&](const auto& e) { return e.action == a; });
  };
  EXPECT_EQ(count(EventAction::replayed), 1);
  EXPECT_GE(count(EventAction::duplicate), 4);
}

TEST(PipelineRuntime, EventsForOtherInstancesAreIgnored) {
  simcloud::World world;
  RuntimeOptions opts;
  opts.capture_events = true;
  PipelineRuntime rt(world, opts);
  const auto req = make_request();
  rt.deploy(caam::generate_pipeline(req, registry()), stage_execution(req));
  simcloud::CloudEvent stray{"x", "cluster-manager/exec-404", std::string(caam::event_name::hardware_env_ready), {},
                             world.now()};
  EXPECT_TRUE(rt.dispatch(stray).empty());
}

}  // namespace
}  // namespace cloudrepro::runtime
