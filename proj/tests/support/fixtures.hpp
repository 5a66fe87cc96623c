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

#include <string>
#include <vector>

#include "cloudrepro/config/parse.hpp"
#include "cloudrepro/config/request.hpp"

namespace cloudrepro::testing {

/// Knobs for a generated request triple. Defaults form a valid aws dask run.
struct TripleOptions {
  std::string engine = "dask";
  std::string provider = "aws";
  bool aws_block = true;
  bool azure_block = false;
  int nodes = 2;
  std::string aws_type = "c5d.xlarge";
  std::string azure_type = "F4s_v2";
  std::string command = "python train.py --nthreads 2";
  std::vector<std::string> data = {"s3://datasets/cars.csv"};
  std::vector<std::string> bootstrap = {};
  std::string access_key = "AKIAFIXTURE0000SECRET";
  std::string secret_key = "fixture/secret+KEY=42";
};

struct Triple {
  std::string resources;
  std::string application;
  std::string personal;
};

inline std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : ", ") + i;
  return out;
}

inline Triple make_triple(const TripleOptions& o = {}) {
  Triple t;
  t.resources = "[resources]\nbigdata_engine = " + o.engine + "\n\n";
  if (o.aws_block)
    t.resources += "[cloud.aws]\nregion = us-west-2\ninstance_number = " + std::to_string(o.nodes) +
                   "\nsubnet_id = subnet-0a1b2c\ninstance_type = " + o.aws_type + "\nvpc_id = vpc-77aa\n\n";
  if (o.azure_block)
    t.resources += "[cloud.azure]\nregion = westus2\ninstance_number = " + std::to_string(o.nodes) +
                   "\nresource_group_name = analytics-rg\ninstance_type = " + o.azure_type + "\n\n";
  t.resources += "[reproduce]\nreproduce_storage = s3://history-bucket\nreproduce_database = dynamodb://executions\n";

  t.application = "[application]\ndocker_image = registry.example/analytics:1.4\ndata_uri = " + join(o.data) +
                  "\ncommand = " + o.command + "\n";
  if (!o.bootstrap.empty()) t.application += "bootstrap = " + join(o.bootstrap) + "\n";

  t.personal = "[personal]\ncloud_provider = " + o.provider +
               "\nkey_path = /home/user/.ssh/lab.pem\nkey_name = lab\npython_runtime = 3.8\n\n"
               "[cloud_credentials]\naccess_key = " + o.access_key + "\nsecret_key = " + o.secret_key + "\n";
  return t;
}

inline config::AbstractRequest make_request(const TripleOptions& o = {}) {
  const auto t = make_triple(o);
  return config::parse_abstract_request(t.resources, t.application, t.personal).request;
}

/// Personal file for a reproduction targeting `provider`, with fresh credentials.
inline config::PersonalSpec fresh_personal(const std::string& provider, const std::string& access_key,
                                           const std::string& secret_key) {
  TripleOptions o;
  o.provider = provider;
  o.aws_block = provider == "aws";
  o.azure_block = provider == "azure";
  o.access_key = access_key;
  o.secret_key = secret_key;
  return make_request(o).personal;
}

}  // namespace cloudrepro::testing
