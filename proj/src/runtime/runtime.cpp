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

#include "cloudrepro/runtime/runtime.hpp"

#include <algorithm>
#include <cstdio>

#include "cloudrepro/core/digest.hpp"
#include "cloudrepro/core/error.hpp"
#include "cloudrepro/engines/security.hpp"
#include "cloudrepro/engines/topology.hpp"
#include "cloudrepro/history/archive.hpp"

namespace cloudrepro::runtime {

using nlohmann::json;
namespace fn = caam::function_name;

namespace {

enum class StageStatus { running, done, failed };

std::string part_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "part-%05d", index);
  return buf;
}

std::string_view function_for_stage(std::string_view s) {
  if (s == stage::software_setup) return fn::software_env_setup;
  if (s == stage::analytics) return fn::run_analytics;
  if (s == stage::export_history) return fn::export_execution;
  if (s == stage::termination) return fn::terminate_resources;
  return {};
}

}  // namespace

struct PipelineRuntime::Context {
  StagedExecution staged;
  std::vector<history::InputDataset> inputs;
  std::map<std::string, std::string, std::less<>> stage_jobs;
  std::string open_stage;
  bool provisioned = false;
  bool termination_started = false;
  bool teardown_done = false;
  bool termination_done = false;
  Seconds poll_window{0};
};

json ExecutionOutcome::to_json() const {
  json stages = json::array();
  for (const auto& s : stage_timings)
    stages.push_back({{"stage", s.stage},
                      {"start", to_seconds(s.start)},
                      {"end", to_seconds(s.end)},
                      {"duration_s", s.duration().count()}});
  json j = {{"instance_id", instance_id},
            {"state", to_string(state)},
            {"mode", to_string(mode)},
            {"submit_time", to_seconds(submit_time)},
            {"end_time", to_seconds(end_time)},
            {"total_s", total().count()},
            {"stage_timings", stages},
            {"result_keys", result_keys},
            {"failure", failure}};
  j["history_url"] = history_url ? json(history_url->to_string()) : json(nullptr);
  j["record"] = record ? record->to_json() : json(nullptr);
  return j;
}

PipelineRuntime::PipelineRuntime(simcloud::World& world, RuntimeOptions options)
    : world_(world), options_(std::move(options)) {
  world_.set_event_sink([this](const simcloud::CloudEvent& e) { on_event(e); });
}

PipelineRuntime::~PipelineRuntime() { world_.set_event_sink({}); }

PipelineInstance& PipelineRuntime::mutable_instance(std::string_view instance_id) {
  auto it = instances_.find(instance_id);
  if (it == instances_.end()) throw Error(ErrorCode::NotFound, "no pipeline instance " + std::string(instance_id));
  return *it->second;
}

const PipelineInstance& PipelineRuntime::instance(std::string_view instance_id) const {
  auto it = instances_.find(instance_id);
  if (it == instances_.end()) throw Error(ErrorCode::NotFound, "no pipeline instance " + std::string(instance_id));
  return *it->second;
}

PipelineRuntime::Context& PipelineRuntime::context(std::string_view instance_id) {
  return *contexts_.find(instance_id)->second;
}

std::vector<simcloud::CloudEvent> PipelineRuntime::take_outbox() { return std::exchange(outbox_, {}); }

void PipelineRuntime::on_event(const simcloud::CloudEvent& event) {
  if (options_.capture_events) {
    outbox_.push_back(event);
    return;
  }
  // Delivery is asynchronous: the emitting action finishes first.
  world_.scheduler().schedule_at(world_.now(), [this, event] { dispatch(event); });
}

PipelineInstance& PipelineRuntime::deploy(const caam::PipelineDocument& doc, StagedExecution staged) {
  if (auto problems = caam::check_pipeline_document(doc.to_json()); !problems.empty())
    throw Error(ErrorCode::DeploymentRejected, problems.front());
  if (!world_.catalog().has_provider(doc.provider))
    throw Error(ErrorCode::DeploymentRejected, "provider '" + doc.provider + "' is not available");
  try {
    (void)world_.catalog().instance_type(doc.provider, doc.provisioning.instance_type);
  } catch (const Error& e) {
    throw Error(ErrorCode::DeploymentRejected, e.what());
  }
  if (doc.provisioning.node_count > world_.catalog().provider(doc.provider).quota_nodes)
    throw Error(ErrorCode::DeploymentRejected, "cluster size exceeds the provider quota");
  if (options_.history_enabled && staged.config_archive.empty())
    throw Error(ErrorCode::DeploymentRejected, "no configuration archive staged for history");

  auto inst = std::make_unique<PipelineInstance>();
  // Ids never collide with executions already in the target history table,
  // which may have been copied in from another deployment.
  const auto table = caam::locator_host(doc.executable.resources.at("history").at("database").get<std::string>());
  do {
    inst->instance_id = world_.mint_id("exec");
  } while (world_.database(doc.provider).get(table, inst->instance_id).has_value());
  inst->document = doc;
  for (auto& r : inst->document.rules) r = r.bind(inst->instance_id);
  inst->submit_time = world_.now();
  bus_.install(inst->instance_id, inst->document.rules);

  auto ctx = std::make_unique<Context>();
  ctx->staged = std::move(staged);
  const auto id = inst->instance_id;
  contexts_.emplace(id, std::move(ctx));
  return *instances_.emplace(id, std::move(inst)).first->second;
}

bool PipelineRuntime::predecessor_complete(const PipelineInstance& inst, std::string_view function) const {
  if (function == fn::software_env_setup) return contexts_.find(inst.instance_id)->second->provisioned;
  if (function == fn::run_analytics) return inst.completed_functions.contains(fn::software_env_setup);
  if (function == fn::export_execution) return inst.completed_functions.contains(fn::run_analytics);
  if (function == fn::terminate_resources) return inst.completed_functions.contains(fn::export_execution);
  return false;
}

std::vector<std::string> PipelineRuntime::dispatch(const simcloud::CloudEvent& event) {
  std::vector<std::string> triggered;
  std::map<std::string, std::vector<std::string>> by_instance;
  std::vector<std::string> order;
  for (auto& m : bus_.match(event)) {
    if (!by_instance.contains(m.instance_id)) order.push_back(m.instance_id);
    by_instance[m.instance_id].push_back(std::move(m.function));
  }
  for (const auto& id : order) {
    auto& inst = mutable_instance(id);
    if (!inst.seen_event_ids.insert(event.event_id).second) {
      inst.event_log.push_back({event, EventAction::duplicate, {}});
      continue;
    }
    for (const auto& function : by_instance[id]) {
      const bool parked = std::any_of(inst.parked.begin(), inst.parked.end(),
                                      [&](const auto& p) { return p.second == function; });
      if (is_terminal(inst.state) || inst.failed) {
        inst.event_log.push_back({event, EventAction::ignored, function});
      } else if (inst.started(function) || parked) {
        inst.event_log.push_back({event, EventAction::stale, function});
      } else if (!predecessor_complete(inst, function)) {
        inst.parked.emplace_back(event, function);
        inst.event_log.push_back({event, EventAction::parked, function});
      } else {
        inst.event_log.push_back({event, EventAction::invoked, function});
        triggered.push_back(function);
        invoke(inst, function, &event);
      }
    }
  }
  return triggered;
}

void PipelineRuntime::replay_parked(PipelineInstance& inst) {
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (auto it = inst.parked.begin(); it != inst.parked.end(); ++it) {
      auto [event, function] = *it;
      if (is_terminal(inst.state) || inst.failed) {
        inst.parked.erase(it);
        inst.event_log.push_back({event, EventAction::ignored, function});
      } else if (inst.started(function)) {
        inst.parked.erase(it);
        inst.event_log.push_back({event, EventAction::stale, function});
      } else if (predecessor_complete(inst, function)) {
        inst.parked.erase(it);
        inst.event_log.push_back({event, EventAction::replayed, function});
        invoke(inst, function, &event);
      } else {
        continue;
      }
      progressed = true;
      break;
    }
  }
}

void PipelineRuntime::invoke(PipelineInstance& inst, const std::string& function, const simcloud::CloudEvent*) {
  inst.invocations.push_back({function, world_.now()});
  if (inst.mode == ExecutionMode::serverless)
    world_.ledger().count_request(simcloud::RequestKind::function_invocation, inst.instance_id);
  if (function == fn::software_env_setup) begin_software_setup(inst);
  else if (function == fn::run_analytics) begin_analytics(inst);
  else if (function == fn::export_execution) begin_export(inst);
  else if (function == fn::terminate_resources) begin_termination(inst);
}

void PipelineRuntime::transition(PipelineInstance& inst, InstanceState to) {
  if (inst.state == to) return;
  if (!is_valid_transition(inst.state, to))
    throw Error(ErrorCode::InvalidState, std::string("transition ") + std::string(to_string(inst.state)) + " -> " +
                                             std::string(to_string(to)));
  inst.state = to;
}

void PipelineRuntime::stage_started(PipelineInstance& inst, std::string_view s, InstanceState state) {
  transition(inst, state);
  inst.timings.push_back({std::string(s), world_.now(), world_.now()});
  context(inst.instance_id).open_stage = std::string(s);
}

void PipelineRuntime::stage_finished(PipelineInstance& inst, std::string_view s) {
  for (auto& t : inst.timings)
    if (t.stage == s) t.end = world_.now();
  auto& ctx = context(inst.instance_id);
  if (ctx.open_stage == s) ctx.open_stage.clear();
}

void PipelineRuntime::function_completed(PipelineInstance& inst, std::string_view function) {
  inst.completed_functions.insert(std::string(function));
}

void PipelineRuntime::start(std::string_view instance_id) {
  auto& inst = mutable_instance(instance_id);
  if (inst.state != InstanceState::Submitted) throw Error(ErrorCode::InvalidState, "instance already started");
  begin_provisioning(inst);
}

std::string PipelineRuntime::results_bucket(const PipelineInstance& inst) const {
  return caam::locator_host(inst.document.executable.resources.at("history").at("storage").get<std::string>());
}

std::optional<history::HistoryStore> PipelineRuntime::history_store(const PipelineInstance& inst) const {
  const auto& h = inst.document.executable.resources.at("history");
  const std::string storage = h.at("storage");
  const auto sep = storage.find("://");
  history::HistoryLocation loc{inst.document.provider, sep == std::string::npos ? "store" : storage.substr(0, sep),
                               caam::locator_host(storage), caam::locator_host(h.at("database").get<std::string>())};
  return history::HistoryStore(world_, std::move(loc));
}

std::vector<history::InputDataset> PipelineRuntime::inputs_of(const PipelineInstance& inst) const {
  std::vector<history::InputDataset> out;
  for (const auto& locator : inst.document.executable.application.at("data_uri"))
    out.push_back({locator.get<std::string>(), world_.datasets().bytes(locator.get<std::string>())});
  return out;
}

void PipelineRuntime::begin_provisioning(PipelineInstance& inst) {
  inst.start_time = world_.now();
  stage_started(inst, stage::provisioning, InstanceState::Provisioning);
  const auto& p = inst.document.provisioning;
  std::vector<std::string> groups;
  for (const auto& g : inst.document.executable.resources.at("cluster").at("security"))
    groups.push_back(g.at("id").get<std::string>());
  try {
    inst.cluster_id =
        world_.provision_cluster({inst.document.provider, inst.instance_id, p.instance_type, p.node_count, groups})
            .cluster_id;
  } catch (const Error& e) {
    fail(inst, e.what());
    return;
  }
  const std::string id = inst.instance_id;
  world_.start_job(id, "provision", world_.catalog().delays().provision, {}, [this, id](const simcloud::Job&) {
    auto& i = mutable_instance(id);
    stage_finished(i, stage::provisioning);
    context(id).provisioned = true;
    if (i.mode == ExecutionMode::serverless) replay_parked(i);
  });
}

namespace {

/// Shared tail of every function-backed stage.
struct StageEnd {
  std::string_view stage;
  std::string_view function;
  std::string_view event;  // emitted on success in serverless mode; empty for none
};

}  // namespace

void PipelineRuntime::begin_software_setup(PipelineInstance& inst) {
  stage_started(inst, stage::software_setup, InstanceState::SoftwareSetup);
  const std::string id = inst.instance_id;
  const std::string image = inst.document.executable.application.at("docker_image");
  auto& ctx = context(id);
  ctx.stage_jobs[std::string(stage::software_setup)] = world_.start_job(
      id, "software_setup", world_.catalog().delays().image_pull,
      [this, id, image] {
        world_.pull_image(id, image);
        const auto& i = instance(id);
        (void)engines::assign_roles(i.document.provisioning.engine, i.document.provisioning.node_count);
      },
      [this, id](const simcloud::Job& job) {
        auto& i = mutable_instance(id);
        if (job.state == simcloud::JobState::Failed) {
          if (i.mode == ExecutionMode::serverless) fail(i, job.error);
          return;
        }
        stage_finished(i, stage::software_setup);
        function_completed(i, fn::software_env_setup);
        if (i.mode == ExecutionMode::serverless) {
          world_.emit(caam::function_source(id, fn::software_env_setup),
                      std::string(caam::event_name::software_env_ready));
          replay_parked(i);
        }
      });
}

void PipelineRuntime::begin_analytics(PipelineInstance& inst) {
  stage_started(inst, stage::analytics, InstanceState::Executing);
  const std::string id = inst.instance_id;
  const auto& app = inst.document.executable.application;
  const std::string command = app.at("command");
  const auto bootstrap = app.at("bootstrap").get<std::vector<std::string>>();
  const auto profile = simcloud::vary(options_.workload, options_.workload_seed);

  Seconds duration{0};
  try {
    const int p = simcloud::parallelism_from_command(command);
    duration = world_.catalog().delays().bootstrap_command * static_cast<std::int64_t>(bootstrap.size()) +
               simcloud::workload_duration(inst.document.provisioning.node_count, p, profile);
  } catch (const Error& e) {
    fail(inst, e.what());
    return;
  }

  auto& ctx = context(id);
  ctx.stage_jobs[std::string(stage::analytics)] = world_.start_job(
      id, "analytics", duration,
      [this, id, command, bootstrap, profile] {
        auto& i = mutable_instance(id);
        for (std::size_t b = 0; b < bootstrap.size(); ++b) world_.faults().check(simcloud::op::run_command);
        world_.faults().check(simcloud::op::run_command);
        auto& c = context(id);
        c.inputs = inputs_of(i);
        if (profile.exit_code != 0)
          throw Error(ErrorCode::AnalyticsFailure, "analytics exited with status " + std::to_string(profile.exit_code));
        std::string fingerprint = i.document.executable.application.at("docker_image").get<std::string>() + "\n" +
                                  command + "\n" + std::to_string(options_.workload_seed) + "\n";
        for (const auto& in : c.inputs) fingerprint += sha256_hex(in.bytes) + "\n";
        const auto bucket = results_bucket(i);
        const auto prefix = caam::export_prefix(id);
        std::string manifest;
        for (int k = 0; k < profile.result_objects; ++k) {
          const auto name = part_name(k);
          world_.put_object(i.document.provider, id, bucket, prefix + name,
                            simcloud::result_object_bytes(fingerprint, k, profile.result_bytes));
          i.result_keys.push_back(prefix + name);
          manifest += name + "\n";
        }
        world_.put_object(i.document.provider, id, bucket, prefix + "manifest", manifest);
        i.result_keys.push_back(prefix + "manifest");
      },
      [this, id](const simcloud::Job& job) {
        auto& i = mutable_instance(id);
        if (job.state == simcloud::JobState::Failed) {
          if (i.mode == ExecutionMode::serverless) fail(i, job.error);
          return;
        }
        stage_finished(i, stage::analytics);
        function_completed(i, fn::run_analytics);
        if (i.mode == ExecutionMode::serverless) replay_parked(i);
      });
}

history::ExecutionRecord PipelineRuntime::base_record(const PipelineInstance& inst) const {
  history::ExecutionRecord r;
  r.execution_id = inst.instance_id;
  r.provider = inst.document.provider;
  r.engine = std::string(config::to_string(inst.document.provisioning.engine));
  r.submit_time = inst.submit_time;
  r.start_time = inst.start_time.value_or(inst.submit_time);
  const auto& app = inst.document.executable.application;
  r.parameters[std::string(history::kCommandParameter)] = app.at("command").get<std::string>();
  r.parameters["docker_image"] = app.at("docker_image").get<std::string>();
  std::string data;
  for (const auto& d : app.at("data_uri")) data += (data.empty() ? "" : ", ") + d.get<std::string>();
  r.parameters["data_uri"] = data;
  for (const auto& [flag, value] : app.at("engine_parameters").items()) r.parameters[flag] = value.get<std::string>();
  r.parameters["instance_type"] = inst.document.provisioning.instance_type;
  r.parameters["node_count"] = std::to_string(inst.document.provisioning.node_count);
  r.parameters["region"] = inst.document.provisioning.region;
  for (const auto& [k, v] : contexts_.find(inst.instance_id)->second->staged.extra_parameters) r.parameters[k] = v;
  auto store = history_store(inst);
  for (const auto& key : inst.result_keys) r.output_urls.push_back(store->object_url(key));
  r.stage_timings = inst.timings;
  return r;
}

void PipelineRuntime::begin_export(PipelineInstance& inst) {
  stage_started(inst, stage::export_history, InstanceState::Exporting);
  const std::string id = inst.instance_id;
  auto& ctx = context(id);
  Seconds duration{0};
  std::function<void()> effect;
  if (options_.history_enabled) {
    auto store = history_store(inst);
    duration = world_.catalog().delays().storage_op * store->planned_storage_ops(ctx.inputs);
    effect = [this, id] {
      auto& i = mutable_instance(id);
      auto& c = context(id);
      auto store = history_store(i);
      auto record = base_record(i);
      record.status = history::RecordStatus::PendingTermination;
      record.end_time = world_.now();
      record.duration = record.end_time - record.start_time;
      record.cost = simcloud::compute_cost(world_.ledger().for_owner(id), world_.now());
      std::vector<history::ZipEntry> outputs;
      const auto bucket = results_bucket(i);
      const auto prefix = caam::export_prefix(id);
      for (const auto& key : i.result_keys)
        outputs.push_back({key.substr(prefix.size()), world_.storage(i.document.provider).get(bucket, key).bytes});
      const history::ArchiveBundle bundle{c.staged.config_archive, history::build_result_archive(std::move(outputs))};
      store->store_execution(record, bundle, c.inputs, c.staged.secret_values, id);
      i.record = record;
    };
  }
  ctx.stage_jobs[std::string(stage::export_history)] =
      world_.start_job(id, "export", duration, std::move(effect), [this, id](const simcloud::Job& job) {
        auto& i = mutable_instance(id);
        if (job.state == simcloud::JobState::Failed) {
          if (i.mode == ExecutionMode::serverless) fail(i, job.error);
          return;
        }
        stage_finished(i, stage::export_history);
        function_completed(i, fn::export_execution);
        if (i.mode == ExecutionMode::serverless) {
          world_.emit(caam::function_source(id, fn::export_execution), std::string(caam::event_name::export_complete));
          replay_parked(i);
        }
      });
}

void PipelineRuntime::begin_termination(PipelineInstance& inst) {
  auto& ctx = context(inst.instance_id);
  if (ctx.termination_started) return;
  ctx.termination_started = true;
  if (!ctx.open_stage.empty()) stage_finished(inst, ctx.open_stage);
  stage_started(inst, stage::termination, InstanceState::Terminating);
  const std::string id = inst.instance_id;
  world_.terminate_owner(id);

  auto finish = [this, id] {
    auto& i = mutable_instance(id);
    auto& c = context(id);
    stage_finished(i, stage::termination);
    function_completed(i, fn::terminate_resources);
    c.termination_done = true;
    if (i.mode == ExecutionMode::serverless) {
      i.end_time = world_.now();
      transition(i, i.failed ? InstanceState::Failed : InstanceState::Completed);
    }
  };

  world_.start_job(id, "teardown", world_.catalog().delays().teardown, {}, [this, id, finish](const simcloud::Job&) {
    auto& i = mutable_instance(id);
    context(id).teardown_done = true;
    if (!options_.history_enabled || !i.record || i.failed) {
      finish();
      return;
    }
    world_.start_job(
        id, "record_final", world_.catalog().delays().storage_op,
        [this, id] {
          auto& i = mutable_instance(id);
          auto record = *i.record;
          record.status = history::RecordStatus::Completed;
          record.end_time = world_.now();
          record.duration = record.end_time - record.start_time;
          // The charge of this very write is included.
          record.cost = simcloud::compute_cost(world_.ledger().for_owner(id), world_.now()) +
                        Money::for_requests(world_.ledger().prices().db_write, 1);
          record.stage_timings = i.timings;
          for (auto& t : record.stage_timings)
            if (t.stage == stage::termination) t.end = world_.now();
          history_store(i)->update_record(record, id);
          i.record = record;
        },
        [this, id, finish](const simcloud::Job& job) {
          auto& i = mutable_instance(id);
          if (job.state == simcloud::JobState::Failed) {
            i.failed = true;
            i.failure = job.error;
          }
          finish();
        });
  });
}

void PipelineRuntime::write_failed_record(PipelineInstance& inst) {
  if (!options_.history_enabled) return;
  auto& ctx = context(inst.instance_id);
  try {
    auto store = history_store(inst);
    if (inst.record) {
      inst.record->status = history::RecordStatus::Failed;
      inst.record->end_time = world_.now();
      inst.record->duration = inst.record->end_time - inst.record->start_time;
      store->update_record(*inst.record, inst.instance_id);
      return;
    }
    auto record = base_record(inst);
    record.status = history::RecordStatus::Failed;
    record.end_time = world_.now();
    record.duration = record.end_time - record.start_time;
    record.cost = simcloud::compute_cost(world_.ledger().for_owner(inst.instance_id), world_.now());
    record.parameters["failure"] = inst.failure;
    const history::ArchiveBundle bundle{ctx.staged.config_archive, history::build_result_archive({})};
    store->store_execution(record, bundle, ctx.inputs, ctx.staged.secret_values, inst.instance_id);
    inst.record = record;
  } catch (const Error&) {
    // Best effort: the failure itself may be the storage being unavailable.
  }
}

void PipelineRuntime::fail(PipelineInstance& inst, const std::string& reason) {
  if (inst.failed || is_terminal(inst.state)) return;
  inst.failed = true;
  inst.failure = reason;
  auto& ctx = context(inst.instance_id);
  if (ctx.termination_started) return;  // teardown completion settles the state
  if (!ctx.open_stage.empty()) stage_finished(inst, ctx.open_stage);
  write_failed_record(inst);
  begin_termination(inst);
}

ExecutionOutcome PipelineRuntime::outcome(std::string_view instance_id) const {
  const auto& inst = instance(instance_id);
  ExecutionOutcome o;
  o.instance_id = inst.instance_id;
  o.state = inst.state;
  o.mode = inst.mode;
  o.submit_time = inst.submit_time;
  o.end_time = inst.end_time.value_or(world_.now());
  o.stage_timings = inst.timings;
  o.record = inst.record;
  if (inst.record && !inst.record->history_url.empty()) o.history_url = history::HistoryURL::parse(inst.record->history_url);
  o.result_keys = inst.result_keys;
  o.failure = inst.failure;
  return o;
}

ExecutionOutcome PipelineRuntime::run_serverless(std::string_view instance_id) {
  auto& inst = mutable_instance(instance_id);
  inst.mode = ExecutionMode::serverless;
  if (!bus_.installed(instance_id)) bus_.install(inst.instance_id, inst.document.rules);
  start(instance_id);
  world_.scheduler().run_until_idle();
  return outcome(instance_id);
}

ExecutionOutcome PipelineRuntime::run_sdk_mode(std::string_view instance_id, Seconds poll_window) {
  if (poll_window <= Seconds{0}) throw Error(ErrorCode::InvalidArgument, "poll window must be positive");
  auto& inst = mutable_instance(instance_id);
  inst.mode = ExecutionMode::sdk;
  bus_.uninstall(instance_id);
  const std::string id = inst.instance_id;
  context(id).poll_window = poll_window;

  // Status of the resource owning `s`: the cluster while provisioning, the
  // teardown for termination, the stage's job otherwise.
  auto status = [this, id](std::string_view s) {
    auto& i = mutable_instance(id);
    auto& c = context(id);
    if (s == stage::provisioning) {
      if (!i.cluster_id) return StageStatus::failed;
      return world_.cluster(*i.cluster_id).state == simcloud::ClusterState::Ready && c.provisioned
                 ? StageStatus::done
                 : StageStatus::running;
    }
    if (s == stage::termination) return c.termination_done ? StageStatus::done : StageStatus::running;
    auto job = c.stage_jobs.find(s);
    if (job == c.stage_jobs.end()) return StageStatus::failed;
    switch (world_.job(job->second).state) {
      case simcloud::JobState::Running: return StageStatus::running;
      case simcloud::JobState::Succeeded: return StageStatus::done;
      case simcloud::JobState::Failed: return StageStatus::failed;
    }
    return StageStatus::failed;
  };

  // One poll tick; reschedules itself until the stage settles.
  auto poll = std::make_shared<std::function<void(std::string, SimTime, std::int64_t)>>();
  *poll = [this, id, status, poll, poll_window](std::string s, SimTime stage_start, std::int64_t tick) {
    world_.scheduler().schedule_at(
        stage_start + poll_window * tick,
        [this, id, status, poll, s, stage_start, tick] {
          auto& i = mutable_instance(id);
          const auto st = status(s);
          if (st == StageStatus::running) {
            (*poll)(s, stage_start, tick + 1);
            return;
          }
          if (s == stage::termination) {
            i.end_time = world_.now();
            transition(i, i.failed ? InstanceState::Failed : InstanceState::Completed);
            return;
          }
          if (st == StageStatus::failed) {
            std::string reason = "stage " + s + " failed";
            if (auto job = context(id).stage_jobs.find(s); job != context(id).stage_jobs.end())
              reason = world_.job(job->second).error;
            fail(i, reason);
            (*poll)(std::string(stage::termination), world_.now(), 1);
            return;
          }
          const auto next = std::find(kStageOrder.begin(), kStageOrder.end(), s) + 1;
          invoke(i, std::string(function_for_stage(*next)), nullptr);
          if (i.failed && !context(id).termination_started) return;
          const std::string next_stage = context(id).termination_started ? std::string(stage::termination)
                                                                         : std::string(*next);
          (*poll)(next_stage, world_.now(), 1);
        },
        simcloud::Priority::observer);
  };

  start(id);
  (*poll)(context(id).termination_started ? std::string(stage::termination) : std::string(stage::provisioning),
          world_.now(), 1);
  world_.scheduler().run_until_idle();
  *poll = nullptr;  // break the self-reference
  return outcome(id);
}

}  // namespace cloudrepro::runtime
