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

#include "cloudrepro/simcloud/workload.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cloudrepro/core/digest.hpp"
#include "cloudrepro/core/error.hpp"
#include "cloudrepro/engines/engine_config.hpp"

namespace cloudrepro::simcloud {

double synthetic_workload(int nodes, int per_node_parallelism, const WorkloadProfile& profile) {
  if (nodes < 1 || per_node_parallelism < 1)
    throw Error(ErrorCode::InvalidArgument, "workload needs at least one node and one worker per node");
  if (profile.serial_s < 0 || profile.parallel_s < 0 || profile.per_node_comm_s < 0)
    throw Error(ErrorCode::InvalidArgument, "workload profile terms must be nonnegative");
  const double n = nodes;
  const double p = per_node_parallelism;
  return profile.serial_s + profile.parallel_s / (n * p) + profile.per_node_comm_s * (n - 1);
}

Seconds workload_duration(int nodes, int per_node_parallelism, const WorkloadProfile& profile) {
  return Seconds{static_cast<std::int64_t>(std::ceil(synthetic_workload(nodes, per_node_parallelism, profile)))};
}

WorkloadProfile vary(const WorkloadProfile& profile, std::uint64_t seed) {
  if (profile.jitter <= 0) return profile;
  std::mt19937_64 rng(seed);
  // Raw engine output keeps the draw identical across standard libraries.
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  WorkloadProfile out = profile;
  out.serial_s *= 1 + profile.jitter * (2 * unit() - 1);
  out.parallel_s *= 1 + profile.jitter * (2 * unit() - 1);
  out.per_node_comm_s *= 1 + profile.jitter * (2 * unit() - 1);
  return out;
}

int parallelism_from_command(std::string_view command) {
  const auto args = engines::parse_command_arguments(command);
  for (const char* flag : {"--parallelism", "--nthreads", "--executor-cores"}) {
    auto it = args.find(flag);
    if (it == args.end()) continue;
    try {
      const int p = std::stoi(it->second);
      if (p >= 1) return p;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::MalformedValue, std::string(flag) + " expects a positive integer");
  }
  return 1;
}

std::string result_object_bytes(std::string_view fingerprint, int index, std::size_t size) {
  std::mt19937_64 rng(fnv1a64(std::to_string(index), fnv1a64(fingerprint)));
  std::string out;
  out.reserve(size);
  while (out.size() < size) {
    auto v = rng();
    for (int i = 0; i < 8 && out.size() < size; ++i, v >>= 8) out.push_back(static_cast<char>('a' + (v & 0xff) % 26));
  }
  return out;
}

nlohmann::json to_json(const WorkloadProfile& p) {
  return {{"serial_s", p.serial_s},
          {"parallel_s", p.parallel_s},
          {"per_node_comm_s", p.per_node_comm_s},
          {"jitter", p.jitter},
          {"exit_code", p.exit_code},
          {"result_objects", p.result_objects},
          {"result_bytes", p.result_bytes}};
}

WorkloadProfile workload_profile_from_json(const nlohmann::json& j) {
  static constexpr std::string_view kKeys[] = {"serial_s", "parallel_s", "per_node_comm_s", "jitter",
                                               "exit_code", "result_objects", "result_bytes"};
  if (!j.is_object()) throw Error(ErrorCode::MalformedValue, "workload profile must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
      throw Error(ErrorCode::MalformedValue, "unknown workload profile key '" + key + "'");
  WorkloadProfile p;
  p.serial_s = j.value("serial_s", p.serial_s);
  p.parallel_s = j.value("parallel_s", p.parallel_s);
  p.per_node_comm_s = j.value("per_node_comm_s", p.per_node_comm_s);
  p.jitter = j.value("jitter", p.jitter);
  p.exit_code = j.value("exit_code", p.exit_code);
  p.result_objects = j.value("result_objects", p.result_objects);
  p.result_bytes = j.value("result_bytes", p.result_bytes);
  return p;
}

}  // namespace cloudrepro::simcloud
