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

#include "cloudrepro/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/history/store.hpp"
#include "cloudrepro/metrics/report.hpp"
#include "cloudrepro/metrics/suite.hpp"
#include "cloudrepro/reproducer/reproducer.hpp"
#include "cloudrepro/runtime/execute.hpp"
#include "cloudrepro/simcloud/world.hpp"

namespace cloudrepro::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownEngine:
    case ErrorCode::MissingRequiredKey:
    case ErrorCode::MalformedValue:
    case ErrorCode::ProviderMismatch:
    case ErrorCode::InvalidMerge:
    case ErrorCode::UnknownField:
    case ErrorCode::SuiteParse:
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    case ErrorCode::NotFound:
    case ErrorCode::MalformedURL:
      return kExitNotFound;
    case ErrorCode::UnmappedService:
    case ErrorCode::UnsupportedProvider:
    case ErrorCode::UnsupportedEngineOnProvider:
      return kExitUnsupported;
    case ErrorCode::DeploymentRejected:
    case ErrorCode::UnknownInstanceType:
    case ErrorCode::QuotaExceeded:
    case ErrorCode::NoSuchKey:
    case ErrorCode::NoSuchImage:
    case ErrorCode::ClockModeViolation:
    case ErrorCode::StorageFailure:
    case ErrorCode::AnalyticsFailure:
      return kExitCloud;
    case ErrorCode::InvalidState:
    case ErrorCode::RedactionViolation:
    case ErrorCode::ArchiveCorrupt:
    case ErrorCode::OpenLedger:
    case ErrorCode::NonPositiveBaseline:
    case ErrorCode::InsufficientSamples:
    case ErrorCode::Io:
      return kExitInternal;
  }
  return kExitInternal;
}

namespace {

constexpr const char* kSnapshotFile = "world.cbor";

struct CommonFlags {
  std::string state_dir;
  std::string catalog;
  bool json = false;
};

struct ExecFlags {
  std::string mode = "serverless";
  std::int64_t poll_window = 10;
  bool deterministic = true;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool no_history = false;
  std::string workload;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, std::string_view bytes) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const auto tmp = fs::path(p.string() + ".tmp");
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw Error(ErrorCode::Io, "cannot write " + p.string());
    o.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!o) throw Error(ErrorCode::Io, "cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

/// The persisted simulated cloud. Realtime runs use a fresh, unsaved world.
class Session {
 public:
  Session(const CommonFlags& common, const config::EnvLookup& env, simcloud::ClockMode mode) {
    if (!common.state_dir.empty()) dir_ = common.state_dir;
    else if (auto v = env("CLOUDREPRO_STATE_DIR"); v && !v->empty()) dir_ = *v;
    else dir_ = ".cloudrepro";
    auto catalog = common.catalog.empty() ? simcloud::Catalog::builtin() : simcloud::Catalog::load(common.catalog);
    persistent_ = mode == simcloud::ClockMode::deterministic;
    const auto file = dir_ / kSnapshotFile;
    if (persistent_ && fs::exists(file)) {
      const auto bytes = read_file(file);
      json snapshot;
      try {
        snapshot = json::from_cbor(bytes);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, "state file " + file.string() + " is unreadable: " + e.what());
      }
      try {
        world_ = simcloud::World::restore(snapshot, std::move(catalog));
      } catch (const Error& e) {
        throw Error(ErrorCode::Io, "state file " + file.string() + ": " + e.what());
      }
    } else {
      world_ = std::make_unique<simcloud::World>(std::move(catalog), mode);
    }
  }

  simcloud::World& world() { return *world_; }

  void save() const {
    if (!persistent_) return;
    const auto cbor = json::to_cbor(world_->snapshot());
    write_file(dir_ / kSnapshotFile, std::string_view(reinterpret_cast<const char*>(cbor.data()), cbor.size()));
  }

 private:
  fs::path dir_;
  bool persistent_ = true;
  std::unique_ptr<simcloud::World> world_;
};

void add_exec_flags(CLI::App* cmd, ExecFlags& f, const char* out_dir_help) {
  cmd->add_option("--mode", f.mode, "serverless (event triggered) or sdk (client polling)")
      ->check(CLI::IsMember({"serverless", "sdk"}))
      ->capture_default_str();
  cmd->add_option("--poll-window", f.poll_window, "Seconds between status polls in sdk mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--deterministic,!--no-deterministic", f.deterministic,
                "Virtual clock (default); --no-deterministic paces the run in wall-clock time without saving state");
  cmd->add_option("--out-dir", f.out_dir, out_dir_help);
  cmd->add_option("--seed", f.seed, "Workload seed")->capture_default_str();
  cmd->add_flag("--no-history", f.no_history, "Skip history storage (baseline runs)");
  cmd->add_option("--workload", f.workload, "JSON workload profile")->check(CLI::ExistingFile);
}

runtime::RuntimeOptions runtime_options(const ExecFlags& f) {
  runtime::RuntimeOptions o;
  if (!f.workload.empty()) {
    try {
      o.workload = simcloud::workload_profile_from_json(json::parse(read_file(f.workload)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedValue, "workload profile: " + std::string(e.what()));
    }
  }
  o.workload_seed = f.seed;
  o.history_enabled = !f.no_history;
  return o;
}

runtime::ExecuteOptions execute_options(const ExecFlags& f) {
  runtime::ExecuteOptions o;
  o.mode = runtime::parse_execution_mode(f.mode);
  o.poll_window = Seconds{f.poll_window};
  return o;
}

simcloud::ClockMode clock_mode(const ExecFlags& f) {
  return f.deterministic ? simcloud::ClockMode::deterministic : simcloud::ClockMode::realtime;
}

std::vector<engines::ConfigArtifact> engine_files(const std::vector<std::string>& paths) {
  std::vector<engines::ConfigArtifact> out;
  for (const auto& p : paths) out.push_back({fs::path(p).filename().string(), read_file(p)});
  return out;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

/// Prints the run summary and writes the report file; returns the exit code.
int report_run(const runtime::ExecutionOutcome& outcome, const simcloud::World& world, double cpu_share,
               const ExecFlags& flags, const CommonFlags& common, std::ostream& out) {
  const auto metrics = metrics::measure(outcome, world.ledger(), cpu_share);
  const json doc = {{"outcome", outcome.to_json()}, {"metrics", metrics.to_json()}};
  if (!flags.out_dir.empty()) write_file(fs::path(flags.out_dir) / (outcome.instance_id + ".json"), doc.dump(2) + "\n");

  if (common.json) {
    out << doc.dump(2) << '\n';
  } else {
    char buf[128];
    out << "execution  " << outcome.instance_id << '\n';
    out << "state      " << runtime::to_string(outcome.state) << '\n';
    out << "mode       " << runtime::to_string(outcome.mode) << '\n';
    out << "history    " << (outcome.history_url ? outcome.history_url->to_string() : "-") << '\n';
    std::snprintf(buf, sizeof buf, "m1         %lld s (%.6f h)\n", static_cast<long long>(metrics.m1.count()),
                  metrics.m1_hours());
    out << buf;
    out << "m2         " << metrics.m2.to_string() << '\n';
    std::snprintf(buf, sizeof buf, "m3         %.9f\n", metrics.m3_ppr());
    out << buf;
    out << "stages    ";
    for (const auto& s : outcome.stage_timings) out << ' ' << s.stage << '=' << s.duration().count() << 's';
    out << '\n';
    if (!outcome.failure.empty()) out << "failure    " << outcome.failure << '\n';
  }
  return outcome.state == runtime::InstanceState::Completed ? kExitOk : kExitRunFailed;
}

double cpu_share_of(const config::AbstractRequest& request, const simcloud::Catalog& catalog) {
  try {
    return metrics::cpu_fraction(request, catalog);
  } catch (const Error&) {
    return 1.0;
  }
}

int cmd_run(const std::string& res, const std::string& app, const std::string& pers,
            const std::vector<std::string>& files, const ExecFlags& flags, const CommonFlags& common,
            const config::EnvLookup& env, std::ostream& out, std::ostream& err) {
  auto parsed = config::parse_abstract_request(read_file(res), read_file(app), read_file(pers));
  print_warnings(parsed.warnings, err);
  auto request = std::move(parsed.request);
  request.personal = config::apply_environment(std::move(request.personal), env);

  Session session(common, env, clock_mode(flags));
  const auto registry = caam::AdapterRegistry::with_builtin_adapters();
  runtime::PipelineRuntime rt(session.world(), runtime_options(flags));
  const auto outcome = runtime::execute_request(rt, request, registry, execute_options(flags), engine_files(files));
  session.save();
  if (!flags.out_dir.empty())
    caam::write_pipeline_files(caam::generate_pipeline(request, registry), fs::path(flags.out_dir) / outcome.instance_id);
  return report_run(outcome, session.world(), cpu_share_of(request, session.world().catalog()), flags, common, out);
}

int cmd_reproduce(const std::string& url, const std::string& pers, const std::string& res, const std::string& app,
                  const std::string& to_provider, const ExecFlags& flags, const CommonFlags& common,
                  const config::EnvLookup& env, std::ostream& out, std::ostream& err) {
  Session session(common, env, clock_mode(flags));
  auto& world = session.world();
  const auto ancestor = reproducer::load_ancestor(world, url);

  std::vector<std::string> warnings;
  config::OverrideSet overrides;
  overrides.personal = config::apply_environment(config::parse_personal_file(read_file(pers), &warnings), env);
  if (!to_provider.empty()) overrides.target_provider = to_provider;
  if (!res.empty()) overrides.resources = config::parse_resources_file(read_file(res), &warnings);
  if (!app.empty()) {
    const auto engine = overrides.resources ? overrides.resources->bigdata_engine
                                            : ancestor.request.resources.bigdata_engine;
    overrides.application = config::parse_application_file(read_file(app), engine, &warnings);
  }
  print_warnings(warnings, err);

  const auto registry = caam::AdapterRegistry::with_builtin_adapters();
  runtime::PipelineRuntime rt(world, runtime_options(flags));
  const auto r = reproducer::reproduce(rt, url, overrides, registry, execute_options(flags));
  session.save();
  if (!flags.out_dir.empty()) caam::write_pipeline_files(r.document, fs::path(flags.out_dir) / r.outcome.instance_id);
  if (!common.json) {
    out << "ancestor   " << r.ancestor_url.to_string() << '\n';
    out << "descendant " << (r.outcome.history_url ? r.outcome.history_url->to_string() : "-") << '\n';
  }
  return report_run(r.outcome, world, cpu_share_of(r.request, world.catalog()), flags, common, out);
}

int cmd_history(const std::vector<simcloud::FieldFilter>& filters, const CommonFlags& common,
                const config::EnvLookup& env, std::ostream& out) {
  Session session(common, env, simcloud::ClockMode::deterministic);
  const auto rows = history::HistoryStore::query_all(session.world(), filters);

  if (common.json) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(r.to_json());
    out << arr.dump(2) << '\n';
    return kExitOk;
  }
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-14s %-8s %-8s %-29s %8s %10s %-14s %s\n", "execution_id", "provider", "engine",
                "status", "submit_s", "duration_s", "cost", "history_url");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-14s %-8s %-8s %-29s %8lld %10lld %-14s %s\n", r.execution_id.c_str(),
                  r.provider.c_str(), r.engine.c_str(), std::string(history::to_string(r.status)).c_str(),
                  static_cast<long long>(to_seconds(r.submit_time)), static_cast<long long>(r.duration.count()),
                  r.cost.to_string().c_str(), r.history_url.c_str());
    out << buf;
  }
  return kExitOk;
}

int cmd_bench(const std::string& suite_file, const ExecFlags& flags, const CommonFlags& common,
              const config::EnvLookup& env, std::ostream& out) {
  auto spec = metrics::load_bench_spec(suite_file);
  spec.request.personal = config::apply_environment(std::move(spec.request.personal), env);
  spec.env.clock = clock_mode(flags);
  if (!common.catalog.empty()) spec.env.catalog = simcloud::Catalog::load(common.catalog);
  const auto report = metrics::run_bench(spec, caam::AdapterRegistry::with_builtin_adapters());
  const fs::path dir = flags.out_dir.empty() ? fs::path("bench-results") : fs::path(flags.out_dir);
  write_file(dir / "bench.jsonl", report.to_jsonl());
  write_file(dir / "bench.txt", report.to_table());
  out << (common.json ? report.to_jsonl() : report.to_table());
  return kExitOk;
}

simcloud::FieldFilter parse_where(const std::string& clause) {
  const auto eq = clause.find('=');
  if (eq == std::string::npos || eq == 0)
    throw Error(ErrorCode::InvalidArgument, "--where expects field=value, got '" + clause + "'");
  return {clause.substr(0, eq), clause.substr(eq + 1)};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const config::EnvLookup& env) {
  CLI::App app{"Execute, reproduce, query and benchmark cloud analytics pipelines", "cloudrepro"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  CommonFlags common;
  app.add_option("--state-dir", common.state_dir, "Directory holding the simulated cloud state");
  app.add_option("--catalog", common.catalog, "Instance and price catalog (JSON)")->check(CLI::ExistingFile);
  app.add_flag("--json", common.json, "Machine-readable output");

  ExecFlags flags;
  std::string res, appl, pers, url, to_provider, suite;
  std::vector<std::string> files;

  auto* run = app.add_subcommand("run", "Execute a request given its three configuration files");
  run->add_option("resources", res, "resources.ini")->required()->check(CLI::ExistingFile);
  run->add_option("application", appl, "application.ini")->required()->check(CLI::ExistingFile);
  run->add_option("personal", pers, "personal.ini")->required()->check(CLI::ExistingFile);
  run->add_option("--engine-file", files, "Engine configuration file to archive with the run")
      ->check(CLI::ExistingFile);
  add_exec_flags(run, flags, "Directory for the run report and generated pipeline files");

  auto* rep = app.add_subcommand("reproduce", "Re-run a stored execution from its history URL");
  rep->add_option("url", url, "rpac://<provider>/<store>/<execution_id>")->required();
  rep->add_option("--personal", pers, "Fresh personal.ini")->required()->check(CLI::ExistingFile);
  rep->add_option("--resources", res, "Replacement resources.ini")->check(CLI::ExistingFile);
  rep->add_option("--application", appl, "Replacement application.ini")->check(CLI::ExistingFile);
  rep->add_option("--to-provider", to_provider, "Reproduce on another provider");
  add_exec_flags(rep, flags, "Directory for the run report and generated pipeline files");

  auto* hist = app.add_subcommand("history", "Query stored execution records");
  std::string status, engine, provider;
  std::vector<std::string> where;
  hist->add_option("--status", status, "Completed, Failed or Completed-pending-termination");
  hist->add_option("--engine", engine, "none, spark, horovod or dask");
  hist->add_option("--provider", provider, "Provider id");
  hist->add_option("--where", where, "field=value; repeatable, all must hold");

  auto* bench = app.add_subcommand("bench", "Run the benchmark suites of a suite file");
  bench->add_option("suite", suite, "Suite definition (JSON)")->required()->check(CLI::ExistingFile);
  add_exec_flags(bench, flags, "Directory for the suite reports (default bench-results)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(res, appl, pers, files, flags, common, env, out, err);
    if (rep->parsed()) return cmd_reproduce(url, pers, res, appl, to_provider, flags, common, env, out, err);
    if (hist->parsed()) {
      std::vector<simcloud::FieldFilter> filters;
      if (!status.empty()) filters.push_back({"status", status});
      if (!engine.empty()) filters.push_back({"engine", engine});
      if (!provider.empty()) filters.push_back({"provider", provider});
      for (const auto& w : where) filters.push_back(parse_where(w));
      return cmd_history(filters, common, env, out);
    }
    if (bench->parsed()) return cmd_bench(suite, flags, common, env, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace cloudrepro::cli
