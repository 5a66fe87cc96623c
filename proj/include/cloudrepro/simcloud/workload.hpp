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
#include <string>
#include <string_view>

#include <json.hpp>

#include "cloudrepro/core/time.hpp"

namespace cloudrepro::simcloud {

/// Synthetic analytics cost model standing in for a real application.
struct WorkloadProfile {
  double serial_s = 10;
  double parallel_s = 100;
  double per_node_comm_s = 2;
  /// Relative spread of per-seed variation, in [0, 1).
  double jitter = 0;
  /// Simulated exit status of the analytics command.
  int exit_code = 0;
  int result_objects = 2;
  std::size_t result_bytes = 512;

  friend bool operator==(const WorkloadProfile&, const WorkloadProfile&) = default;
};

/// serial + parallel/(n·p) + comm·(n−1). Throws Error(InvalidArgument) for
/// n < 1, p < 1 or negative profile terms.
double synthetic_workload(int nodes, int per_node_parallelism, const WorkloadProfile& profile);

/// synthetic_workload rounded up to whole virtual seconds.
Seconds workload_duration(int nodes, int per_node_parallelism, const WorkloadProfile& profile);

/// Profile whose time terms are scaled by a factor in [1 − jitter, 1 + jitter]
/// drawn from mt19937_64 seeded with `seed`. Jitter 0 returns the profile unchanged.
WorkloadProfile vary(const WorkloadProfile& profile, std::uint64_t seed);

/// Per-node parallelism requested on the command line through
/// --parallelism, --nthreads or --executor-cores; 1 when absent.
int parallelism_from_command(std::string_view command);

/// Deterministic bytes of result object `index` for an analytics run
/// identified by `fingerprint`.
std::string result_object_bytes(std::string_view fingerprint, int index, std::size_t size);

nlohmann::json to_json(const WorkloadProfile& profile);
WorkloadProfile workload_profile_from_json(const nlohmann::json& j);

}  // namespace cloudrepro::simcloud
