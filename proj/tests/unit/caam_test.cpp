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

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/core/error.hpp"
#include "support/fixtures.hpp"

namespace cloudrepro::caam {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::make_request;
using testing::TripleOptions;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

config::AbstractRequest both_blocks(const std::string& provider, const std::string& engine = "dask") {
  TripleOptions o;
  o.provider = provider;
  o.engine = engine;
  o.azure_block = true;
  return make_request(o);
}

// Service table cells, one row per category: aws, azure, gcloud.
struct Cell {
  ServiceCategory category;
  const char* aws;
  const char* azure;
  const char* gcloud;
};
constexpr Cell kTable[] = {
    {ServiceCategory::virtual_cluster, "EC2 Auto Scaling/EMR", "Virtual Machine Scale Set/HDInsight",
     "Autoscaling Groups/Dataproc"},
    {ServiceCategory::virtual_network, "VPN", "Virtual Network", "Virtual Private Cloud"},
    {ServiceCategory::container_service, "ECR", "Azure Container Registry", "Artifact Registry"},
    {ServiceCategory::object_storage, "S3", "Blob storage", "Firebase"},
    {ServiceCategory::database, "DynamoDB", "CosmosDB", "Firebase Realtime Database"},
    {ServiceCategory::serverless, "CloudFormation & Lambda Functions", "Deployment Manager & Azure Functions",
     "Cloud Deployment Manager & Cloud Functions"},
    {ServiceCategory::cloud_sdk, "Boto/Boto3", ".NET Core", "Cloud SDK"},
    {ServiceCategory::authentication, "AWS IAM", "Azure IAM", "Cloud IAM"},
};

TEST(ServiceMapping, MatchesTheServiceTable) {
  const auto& m = ServiceMapping::standard();
  for (const auto& c : kTable) {
    EXPECT_EQ(m.lookup(c.category, "aws"), c.aws);
    EXPECT_EQ(m.lookup(c.category, "azure"), c.azure);
    EXPECT_EQ(m.lookup(c.category, "gcloud"), c.gcloud);
  }
  EXPECT_EQ(m.entries().size(), 24u);
  EXPECT_TRUE(m.covers("aws"));
  EXPECT_TRUE(m.covers("azure"));
}

TEST(ServiceMapping, UnknownPairIsUnmapped) {
  EXPECT_EQ(code_of([] { ServiceMapping::standard().lookup(ServiceCategory::virtual_cluster, "oracle"); }),
            ErrorCode::UnmappedService);
  EXPECT_FALSE(ServiceMapping::standard().covers("oracle"));
}

TEST(GeneratePipeline, AwsDaskHasFourFunctionsInOrder) {
  const auto doc = generate_pipeline(make_request(), AdapterRegistry::with_builtin_adapters());
  EXPECT_EQ(doc.provider, "aws");
  EXPECT_EQ(doc.schema_version, 1);
  ASSERT_EQ(doc.functions.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(doc.functions[i].name, kFunctionOrder[i]);
  EXPECT_EQ(doc.provisioning.service, "EC2 Auto Scaling/EMR");
  EXPECT_EQ(doc.provisioning.node_count, 2);
  EXPECT_EQ(doc.provisioning.engine, config::Engine::dask);
  // One rule per function.
  for (auto fn : kFunctionOrder) {
    int n = 0;
    for (const auto& r : doc.rules) n += r.target_function == fn;
    EXPECT_EQ(n, 1) << fn;
  }
  EXPECT_TRUE(check_pipeline_document(doc.to_json()).empty());
}

TEST(GeneratePipeline, RulesFormACausalChainFromProvisioning) {
  const auto doc = generate_pipeline(make_request(), AdapterRegistry::with_builtin_adapters());
  const std::string id = "exec-42";
  // Who emits what: provisioning first, then each function in turn.
  std::vector<std::pair<std::string, std::string>> emitted = {
      {cluster_manager_source(id), std::string(event_name::hardware_env_ready)},
      {function_source(id, function_name::software_env_setup), std::string(event_name::software_env_ready)},
      {object_storage_source("history-bucket"), export_prefix(id) + "part-00000"},
      {function_source(id, function_name::export_execution), std::string(event_name::export_complete)},
  };
  for (std::size_t i = 0; i < 4; ++i) {
    const auto rule = doc.rule_for(kFunctionOrder[i])->bind(id);
    for (std::size_t j = 0; j < emitted.size(); ++j)
      EXPECT_EQ(rule.matches(emitted[j].first, emitted[j].second), i == j) << kFunctionOrder[i] << " vs " << j;
    EXPECT_FALSE(rule.matches("cluster-manager/exec-7", std::string(event_name::hardware_env_ready)));
  }
}

TEST(GeneratePipeline, IsDeterministic) {
  const auto reg = AdapterRegistry::with_builtin_adapters();
  for (const auto* p : {"aws", "azure"}) {
    const auto a = generate_pipeline(both_blocks(p), reg).canonical_text();
    const auto b = generate_pipeline(both_blocks(p), reg).canonical_text();
    EXPECT_EQ(a, b);
    EXPECT_EQ(PipelineDocument::from_json(json::parse(a)).canonical_text(), a);
  }
}

TEST(GeneratePipeline, ApplicationPayloadIsProviderNeutral) {
  const auto reg = AdapterRegistry::with_builtin_adapters();
  const auto aws = generate_pipeline(both_blocks("aws"), reg);
  const auto azure = generate_pipeline(both_blocks("azure"), reg);
  EXPECT_EQ(aws.executable.application, azure.executable.application);
  EXPECT_NE(aws.executable.resources, azure.executable.resources);
  EXPECT_NE(aws.executable.personal, azure.executable.personal);
  EXPECT_EQ(aws.functions, azure.functions);
  EXPECT_EQ(aws.rules, azure.rules);
}

TEST(GeneratePipeline, EveryServiceNameBelongsToItsProvider) {
  const auto reg = AdapterRegistry::with_builtin_adapters();
  for (const auto* p : {"aws", "azure"}) {
    const auto doc = generate_pipeline(both_blocks(p), reg);
    const auto& services = doc.executable.resources.at("services");
    for (const auto& c : kTable) {
      const std::string expected = std::string(p) == "aws" ? c.aws : c.azure;
      EXPECT_EQ(services.at(std::string(to_string(c.category))), expected);
    }
  }
}

TEST(GeneratePipeline, CredentialValuesNeverEnterTheDocument) {
  const auto reg = AdapterRegistry::with_builtin_adapters();
  const TripleOptions o;
  for (const auto* p : {"aws", "azure"}) {
    const auto text = generate_pipeline(both_blocks(p), reg).canonical_text();
    EXPECT_EQ(text.find(o.access_key), std::string::npos);
    EXPECT_EQ(text.find(o.secret_key), std::string::npos);
  }
}

TEST(GeneratePipeline, UnsupportedCombinations) {
  const auto reg = AdapterRegistry::with_builtin_adapters();
  EXPECT_EQ(code_of([&] { generate_pipeline(both_blocks("azure", "spark"), reg); }),
            ErrorCode::UnsupportedEngineOnProvider);
  auto gcloud = make_request();
  gcloud.personal.cloud_provider = "gcloud";
  EXPECT_EQ(code_of([&] { generate_pipeline(gcloud, reg); }), ErrorCode::UnsupportedProvider);
}

TEST(GeneratePipeline, OverridesReplaceWholeSections) {
  const auto reg = AdapterRegistry::with_builtin_adapters();
  config::OverrideSet o;
  o.personal = both_blocks("azure").personal;
  o.resources = both_blocks("azure").resources;
  o.target_provider = "azure";
  const auto doc = generate_pipeline(make_request(), reg, ServiceMapping::standard(), &o);
  EXPECT_EQ(doc.provider, "azure");
}

// Forwards to a wrapped adapter under another provider id and counts calls.
class RecordingAdapter final : public CloudAdapter {
 public:
  RecordingAdapter(std::string id, std::shared_ptr<const CloudAdapter> inner, std::string tag = {})
      : id_(std::move(id)), inner_(std::move(inner)), tag_(std::move(tag)) {}

  std::string_view provider() const override { return id_; }
  json resources_document(const config::AbstractRequest& r, const ServiceMapping& m) const override {
    ++calls;
    auto j = inner_ ? inner_->resources_document(r, m) : generic_resources(r, m);
    if (!tag_.empty()) j["extras"]["tag"] = {{"value", tag_}};
    return j;
  }
  json application_document(const config::ApplicationSpec& a) const override {
    return detail::portable_application_document(a);
  }
  json personal_document(const config::PersonalSpec& p) const override { return detail::personal_section(p, id_); }
  PipelineDocument assemble(ExecutableRequest ex, const config::AbstractRequest& r,
                            const ServiceMapping& m) const override {
    return detail::standard_pipeline(id_, std::move(ex), r, m);
  }

  mutable std::atomic<int> calls{0};

 private:
  json generic_resources(const config::AbstractRequest& r, const ServiceMapping& m) const {
    const auto& block = r.resources.extras.at("cloud." + id_);
    return {{"provider", id_},
            {"region", block.at("region")},
            {"services", detail::service_table(m, id_)},
            {"cluster", detail::cluster_section(r, id_)},
            {"network", json::object()},
            {"history", {{"storage", r.resources.reproduce.reproduce_storage},
                         {"database", r.resources.reproduce.reproduce_database}}},
            {"extras", json::object()}};
  }

  std::string id_;
  std::shared_ptr<const CloudAdapter> inner_;
  std::string tag_;
};

TEST(AdapterRegistry, DispatchInvokesOnlyTheSelectedAdapter) {
  AdapterRegistry reg;
  auto aws = std::make_shared<RecordingAdapter>("aws", std::make_shared<AwsAdapter>());
  auto azure = std::make_shared<RecordingAdapter>("azure", std::make_shared<AzureAdapter>());
  reg.register_adapter("aws", aws);
  reg.register_adapter("azure", azure);
  generate_pipeline(both_blocks("aws"), reg);
  generate_pipeline(both_blocks("aws"), reg);
  generate_pipeline(both_blocks("azure"), reg);
  EXPECT_EQ(aws->calls, 2);
  EXPECT_EQ(azure->calls, 1);
}

TEST(AdapterRegistry, NewProviderCanBeInjectedAndRemoved) {
  auto reg = AdapterRegistry::with_builtin_adapters();
  auto mapping = ServiceMapping::standard();
  for (const auto& c : kTable) mapping.set(c.category, "gcloud-sim", c.gcloud);

  const auto t = testing::make_triple();
  const std::string resources = t.resources +
                                "\n[cloud.gcloud-sim]\nregion = us-west1\ninstance_number = 2\n"
                                "instance_type = n2-standard-4\n";
  std::string personal = t.personal;
  personal.replace(personal.find("= aws"), 5, "= gcloud-sim");
  const auto req = config::parse_abstract_request(resources, t.application, personal).request;

  EXPECT_EQ(code_of([&] { generate_pipeline(req, reg, mapping); }), ErrorCode::UnsupportedProvider);
  const auto before = reg.version();
  reg.register_adapter("gcloud-sim", std::make_shared<RecordingAdapter>("gcloud-sim", nullptr));
  EXPECT_GT(reg.version(), before);
  const auto doc = generate_pipeline(req, reg, mapping);
  EXPECT_EQ(doc.provisioning.service, "Autoscaling Groups/Dataproc");
  EXPECT_TRUE(check_pipeline_document(doc.to_json(), mapping).empty());

  reg.unregister_adapter("gcloud-sim");
  EXPECT_EQ(code_of([&] { generate_pipeline(req, reg, mapping); }), ErrorCode::UnsupportedProvider);
}

TEST(AdapterRegistry, ReplacingOneAdapterLeavesOthersUnchanged) {
  auto reg = AdapterRegistry::with_builtin_adapters();
  const auto aws_before = generate_pipeline(both_blocks("aws"), reg).canonical_text();
  const auto azure_before = generate_pipeline(both_blocks("azure"), reg).canonical_text();
  reg.register_adapter("aws", std::make_shared<RecordingAdapter>("aws", std::make_shared<AwsAdapter>(), "v2"));
  EXPECT_NE(generate_pipeline(both_blocks("aws"), reg).canonical_text(), aws_before);
  EXPECT_EQ(generate_pipeline(both_blocks("azure"), reg).canonical_text(), azure_before);
}

TEST(AdapterRegistry, GenerationRunsConcurrentlyWithRegistration) {
  auto reg = AdapterRegistry::with_builtin_adapters();
  const auto expected = generate_pipeline(both_blocks("azure"), reg).canonical_text();
  std::atomic<bool> mismatch{false};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t)
    readers.emplace_back([&] {
      for (int i = 0; i < 50; ++i)
        if (generate_pipeline(both_blocks("azure"), reg).canonical_text() != expected) mismatch = true;
    });
  for (int i = 0; i < 50; ++i) reg.register_adapter("aws", std::make_shared<AwsAdapter>());
  for (auto& t : readers) t.join();
  EXPECT_FALSE(mismatch);
}

TEST(CheckPipelineDocument, FlagsStructuralProblems) {
  const auto good = generate_pipeline(make_request(), AdapterRegistry::with_builtin_adapters()).to_json();
  auto mutate = [&](auto&& fn) {
    auto j = good;
    fn(j);
    return check_pipeline_document(j);
  };
  EXPECT_FALSE(mutate([](json& j) { j["schema_version"] = 2; }).empty());
  EXPECT_FALSE(mutate([](json& j) { j.erase("executable"); }).empty());
  EXPECT_FALSE(mutate([](json& j) { j["provisioning"]["node_count"] = 0; }).empty());
  EXPECT_FALSE(mutate([](json& j) { j["executable"]["resources"]["services"]["database"] = "CosmosDB"; }).empty());
  EXPECT_FALSE(mutate([](json& j) { j["functions"].erase(1); }).empty());
  EXPECT_FALSE(mutate([](json& j) { j["rules"].erase(0); }).empty());
  EXPECT_FALSE(check_pipeline_document(json::array()).empty());
}

// Generated files are frozen under docs/golden. Set CLOUDREPRO_UPDATE_GOLDEN=1
// to rewrite them after an intended format change.
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(GoldenFiles, GeneratedDocumentsMatch) {
  const fs::path root = CLOUDREPRO_SOURCE_DIR;
  const auto examples = root / "docs" / "examples";
  const bool update = std::getenv("CLOUDREPRO_UPDATE_GOLDEN") != nullptr;
  const auto reg = AdapterRegistry::with_builtin_adapters();
  for (const auto& [provider, personal] : {std::pair{"aws", "personal.ini"}, std::pair{"azure", "personal_azure.ini"}}) {
    const auto req = config::parse_abstract_request(slurp(examples / "resources.ini"),
                                                    slurp(examples / "application.ini"), slurp(examples / personal))
                         .request;
    const auto golden = root / "docs" / "golden" / provider;
    const auto scratch = fs::temp_directory_path() / ("cloudrepro_golden_" + std::string(provider));
    fs::remove_all(scratch);
    const auto written = write_pipeline_files(generate_pipeline(req, reg), update ? golden : scratch);
    ASSERT_EQ(written.size(), 4u);
    EXPECT_EQ(written[0].filename(), "pipeline_" + std::string(provider) + ".json");
    if (update) continue;
    for (const auto& f : written) EXPECT_EQ(slurp(f), slurp(golden / f.filename())) << f.filename();
    fs::remove_all(scratch);
  }
}

}  // namespace
}  // namespace cloudrepro::caam
