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

#include "cloudrepro/engines/engine_config.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "cloudrepro/config/ini.hpp"

namespace cloudrepro::engines {
namespace {

const std::set<std::string, std::less<>> kEngineFlags = {
    // spark-submit
    "--master", "--deploy-mode", "--driver-memory", "--executor-memory", "--executor-cores", "--num-executors",
    "--total-executor-cores", "--driver-cores", "--conf", "--jars", "--py-files", "--packages", "--queue",
    "--properties-file",
    // dask
    "--nthreads", "--nworkers", "--nprocs", "--memory-limit", "--scheduler-file", "--nanny", "--no-nanny",
    // horovodrun / mpirun
    "-np", "--num-proc", "-H", "--hosts", "--hostfile", "-p", "--ssh-port", "--gloo", "--mpi",
    "--network-interface",
    // synthetic workload knob
    "--parallelism"};

bool looks_like_flag(std::string_view word) {
  if (word.size() < 2 || word[0] != '-') return false;
  return !(std::isdigit(static_cast<unsigned char>(word[1])) || word[1] == '.');
}

void add(EngineParameters& params, const std::string& key, const std::string& value) {
  auto [it, inserted] = params.emplace(key, value);
  if (!inserted) it->second += " " + value;
}

}  // namespace

std::vector<std::string> split_command(std::string_view command) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  char quote = 0;
  for (char c : command) {
    if (quote) {
      if (c == quote) quote = 0;
      else current += c;
    } else if (c == '\'' || c == '"') {
      quote = c;
      in_word = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) words.push_back(std::move(current));
      current.clear();
      in_word = false;
    } else {
      current += c;
      in_word = true;
    }
  }
  if (in_word) words.push_back(std::move(current));
  return words;
}

EngineParameters parse_command_arguments(std::string_view command) {
  EngineParameters params;
  const auto words = split_command(command);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    if (!looks_like_flag(w)) continue;
    if (const auto eq = w.find('='); eq != std::string::npos) {
      add(params, w.substr(0, eq), w.substr(eq + 1));
    } else if (i + 1 < words.size() && !looks_like_flag(words[i + 1])) {
      add(params, w, words[i + 1]);
      ++i;
    } else {
      add(params, w, "");
    }
  }
  return params;
}

bool is_engine_flag(std::string_view flag) { return kEngineFlags.contains(flag); }

EngineParameters extract_engine_parameters(std::string_view command) {
  EngineParameters out;
  for (auto& [k, v] : parse_command_arguments(command))
    if (is_engine_flag(k)) out.emplace(k, v);
  return out;
}

std::vector<ConfigArtifact> capture_engine_config(const config::ApplicationSpec& application,
                                                  std::span<const ConfigArtifact> user_files) {
  std::vector<ConfigArtifact> artifacts;
  const auto params = extract_engine_parameters(application.command);
  if (!params.empty()) {
    std::ostringstream out;
    out << "[engine]\n";
    for (const auto& [k, v] : params) {
      out << k << " =";
      if (!v.empty()) out << ' ' << v;
      out << '\n';
    }
    artifacts.push_back({std::string(kEngineParametersArtifact), out.str()});
  }
  for (const auto& f : user_files) {
    auto name = f.name;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
    artifacts.push_back({"engine/" + name, f.content});
  }
  return artifacts;
}

EngineParameters parse_engine_parameters_artifact(std::string_view content) {
  EngineParameters params;
  const auto doc = config::IniDocument::parse(content, kEngineParametersArtifact);
  if (const auto* s = doc.find("engine"))
    for (const auto& e : s->entries) params.emplace(e.key, e.value);
  return params;
}

}  // namespace cloudrepro::engines
