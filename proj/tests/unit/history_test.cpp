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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "cloudrepro/caam/adapter.hpp"
#include "cloudrepro/config/parse.hpp"
#include "cloudrepro/core/error.hpp"
#include "cloudrepro/history/store.hpp"
#include "cloudrepro/runtime/execute.hpp"
#include "support/fixtures.hpp"

namespace cloudrepro::history {
namespace {

namespace fs = std::filesystem;
using testing::make_request;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

TEST(Zip, RoundTripsAndIsByteStable) {
  const std::vector<ZipEntry> entries = {{"b.txt", "second"}, {"a/x.bin", std::string("\0\1\2", 3)}, {"empty", ""}};
  const auto bytes = write_zip(entries);
  EXPECT_EQ(write_zip(entries), bytes);
  EXPECT_EQ(read_zip(bytes), entries);
  EXPECT_EQ(bytes.substr(0, 4), std::string("PK\3\4"));
  // End-of-central-directory record: signature 22 bytes from the end, entry count at +10.
  const auto eocd = bytes.substr(bytes.size() - 22);
  EXPECT_EQ(eocd.substr(0, 4), std::string("PK\5\6"));
  EXPECT_EQ(static_cast<unsigned char>(eocd[10]), entries.size());
}

TEST(Zip, CorruptionIsDetected) {
  auto bytes = write_zip({{"f", "payload"}});
  auto flipped = bytes;
  flipped[flipped.find("payload")] ^= 0x20;
  EXPECT_EQ(code_of([&] { read_zip(flipped); }), ErrorCode::ArchiveCorrupt);
  EXPECT_EQ(code_of([&] { read_zip(bytes.substr(0, bytes.size() - 5)); }), ErrorCode::ArchiveCorrupt);
  EXPECT_EQ(code_of([] { read_zip("not a zip"); }), ErrorCode::ArchiveCorrupt);
}

TEST(Url, GrammarAndErrors) {
  const auto u = HistoryURL::parse("rpac://aws/history-bucket/exec-12");
  EXPECT_EQ(u, (HistoryURL{"aws", "history-bucket", "exec-12"}));
  EXPECT_EQ(u.to_string(), "rpac://aws/history-bucket/exec-12");
  for (const char* bad : {"", "rpac://aws/bucket", "http://aws/b/e", "rpac://aws//e", "rpac:///b/e",
                          "rpac://aws/b/e/extra", "rpac://aws/b/e x"})
    EXPECT_EQ(code_of([&] { HistoryURL::parse(bad); }), ErrorCode::MalformedURL) << bad;
}

TEST(Archive, ConfigHoldsOnlyAbstractRequestFiles) {
  const auto req = make_request();
  const auto zip = build_config_archive(req, {{"engine/spark-env.sh", "X=1\n"}});
  std::vector<std::string> names;
  for (const auto& e : read_zip(zip)) names.push_back(e.name);
  EXPECT_EQ(names, (std::vector<std::string>{"resources.ini", "application.ini", "personal.ini",
                                             "engine/spark-env.sh"}));
  const auto contents = read_config_archive(zip);
  EXPECT_TRUE(unredacted_personal_keys(contents).empty());
  const testing::TripleOptions o;
  EXPECT_TRUE(find_secret_values(zip, {o.access_key, o.secret_key}).empty());
  const auto back = archived_request(contents);
  EXPECT_EQ(back.resources, req.resources);
  EXPECT_EQ(back.application, req.application);
  EXPECT_EQ(back.personal.key_name, req.personal.key_name);
  EXPECT_EQ(back.personal.cloud_credentials.at("secret_key"), config::kRedactedValue);
}

TEST(Archive, MissingRequestFileIsCorrupt) {
  const auto zip = write_zip({{"resources.ini", "x"}, {"application.ini", "y"}});
  EXPECT_EQ(code_of([&] { read_config_archive(zip); }), ErrorCode::ArchiveCorrupt);
}

TEST(Record, JsonRoundTrip) {
  ExecutionRecord r;
  r.execution_id = "exec-3";
  r.provider = "azure";
  r.engine = "horovod";
  r.status = RecordStatus::Failed;
  r.submit_time = at_second(5);
  r.start_time = at_second(6);
  r.end_time = at_second(70);
  r.duration = Seconds{64};
  r.cost = Money::from_dollars(0.125);
  r.parameters = {{"command", "horovodrun -np 2 python t.py"}, {"-np", "2"}};
  r.input_urls = {"s3://d/a"};
  r.output_urls = {"s3://h/o"};
  r.stage_timings = {{"analytics", at_second(10), at_second(40)}};
  EXPECT_EQ(ExecutionRecord::from_json(r.to_json()), r);
  EXPECT_EQ(code_of([] { ExecutionRecord::from_json(nlohmann::json{{"execution_id", 3}}); }),
            ErrorCode::MalformedValue);
}

class Store : public ::testing::Test {
 protected:
  simcloud::World world;
  config::AbstractRequest req = make_request();
  HistoryStore store{world, HistoryLocation::from_request(req)};

  ExecutionRecord record(const std::string& id, const std::string& engine = "dask", const std::string& provider = "aws",
                         RecordStatus status = RecordStatus::Completed, std::int64_t submit = 0) {
    ExecutionRecord r;
    r.execution_id = id;
    r.provider = provider;
    r.engine = engine;
    r.status = status;
    r.submit_time = at_second(submit);
    r.start_time = at_second(submit);
    r.end_time = at_second(submit + 10);
    r.duration = Seconds{10};
    r.parameters = {{"command", "python train.py"}};
    return r;
  }

  ArchiveBundle bundle() const {
    return {build_config_archive(req, {}), build_result_archive({{"part-00000", "result"}})};
  }

  HistoryURL put(ExecutionRecord r, const std::vector<InputDataset>& inputs = {}) {
    return store.store_execution(r, bundle(), inputs, {}, r.execution_id);
  }
};

TEST_F(Store, StoreThenFetchRoundTrips) {
  auto r = record("exec-1");
  const auto url = store.store_execution(r, bundle(), {{"s3://datasets/cars.csv", "a,b\n1,2\n"}}, {}, "exec-1");
  EXPECT_EQ(url.to_string(), "rpac://aws/history-bucket/exec-1");
  EXPECT_EQ(r.history_url, url.to_string());
  const auto [got, b] = HistoryStore::fetch_execution(world, url);
  EXPECT_EQ(got, r);
  EXPECT_EQ(b, bundle());
  EXPECT_EQ(got.input_urls.size(), 1u);
  // The archived request re-parses.
  const auto c = read_config_archive(b.config_zip);
  EXPECT_NO_THROW(config::parse_resources_file(c.resources_ini));
  EXPECT_NO_THROW(config::parse_application_file(c.application_ini, config::Engine::dask));
}

TEST_F(Store, IdenticalInputsAreStoredOnce) {
  const std::string bytes = "x,y\n3,4\n";
  EXPECT_EQ(store.new_input_count({{"s3://d/a", bytes}, {"s3://d/b", bytes}}), 1);
  put(record("exec-1"), {{"s3://d/a", bytes}});
  EXPECT_EQ(store.new_input_count({{"s3://d/a", bytes}}), 0);
  put(record("exec-2"), {{"s3://d/b", bytes}});
  EXPECT_EQ(world.storage("aws").list("history-bucket", "inputs/").size(), 1u);
  const auto a = HistoryStore::fetch_execution(world, "rpac://aws/history-bucket/exec-1").first;
  const auto b = HistoryStore::fetch_execution(world, "rpac://aws/history-bucket/exec-2").first;
  EXPECT_EQ(a.input_urls, b.input_urls);
  EXPECT_EQ(input_key(bytes), input_key(std::string(bytes)));
  EXPECT_NE(input_key(bytes), input_key(bytes + " "));
}

TEST_F(Store, PlannedOperationsCountWrites) {
  const std::vector<InputDataset> inputs = {{"s3://d/a", "1"}, {"s3://d/b", "2"}, {"s3://d/c", "1"}};
  EXPECT_EQ(store.planned_storage_ops(inputs), 2 + 2 + 1);
}

TEST_F(Store, SecretsInTheBundleAreRefused) {
  auto r = record("exec-1");
  ArchiveBundle leaky = bundle();
  leaky.result_zip = build_result_archive({{"log", "key=AKIALEAK"}});
  EXPECT_EQ(code_of([&] { store.store_execution(r, leaky, {}, {"AKIALEAK"}, "exec-1"); }),
            ErrorCode::RedactionViolation);
  auto in_record = record("exec-2");
  in_record.parameters["note"] = "AKIALEAK";
  EXPECT_EQ(code_of([&] { store.store_execution(in_record, bundle(), {}, {"AKIALEAK"}, "exec-2"); }),
            ErrorCode::RedactionViolation);
  // Nothing was written.
  EXPECT_TRUE(world.storage("aws").list("history-bucket").empty());
}

TEST_F(Store, UnredactedPersonalFileIsRefused) {
  auto unredacted = bundle();
  const auto canonical = config::canonical_serialize(req);
  unredacted.config_zip = write_zip({{"resources.ini", canonical.resources},
                                     {"application.ini", canonical.application},
                                     {"personal.ini", canonical.personal}});
  auto r = record("exec-1");
  EXPECT_EQ(code_of([&] { store.store_execution(r, unredacted, {}, {}, "exec-1"); }), ErrorCode::RedactionViolation);
}

TEST_F(Store, StorageFaultsPropagate) {
  world.faults().fail_always(simcloud::op::put_object, ErrorCode::StorageFailure);
  auto r = record("exec-1");
  EXPECT_EQ(code_of([&] { store.store_execution(r, bundle(), {}, {}, "exec-1"); }), ErrorCode::StorageFailure);
}

TEST_F(Store, FetchErrors) {
  put(record("exec-1"));
  EXPECT_EQ(code_of([&] { HistoryStore::fetch_execution(world, "rpac://aws/history-bucket/exec-9"); }),
            ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { HistoryStore::fetch_execution(world, "rpac://azure/history-bucket/exec-1"); }),
            ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { HistoryStore::fetch_execution(world, "rpac:/aws"); }), ErrorCode::MalformedURL);
}

TEST_F(Store, QueryMatchesALinearScan) {
  std::mt19937 rng(11);
  const char* engines[] = {"none", "spark", "horovod", "dask"};
  const char* providers[] = {"aws", "azure"};
  const RecordStatus statuses[] = {RecordStatus::Completed, RecordStatus::Failed};
  std::vector<ExecutionRecord> all;
  for (int i = 0; i < 40; ++i) {
    auto r = record("exec-" + std::to_string(i), engines[rng() % 4], providers[rng() % 2], statuses[rng() % 2],
                    static_cast<std::int64_t>(rng() % 1000));
    put(r);
    all.push_back(HistoryStore::fetch_execution(world, "rpac://aws/history-bucket/" + r.execution_id).first);
  }
  auto oracle = [&](auto pred) {
    std::vector<std::string> ids;
    auto sorted = all;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::pair(a.submit_time, a.execution_id) < std::pair(b.submit_time, b.execution_id);
    });
    for (const auto& r : sorted)
      if (pred(r)) ids.push_back(r.execution_id);
    return ids;
  };
  auto ids = [](const std::vector<ExecutionRecord>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.execution_id);
    return out;
  };
  EXPECT_EQ(ids(store.query({})), oracle([](const auto&) { return true; }));
  EXPECT_EQ(ids(store.query({{"status", "Completed"}})),
            oracle([](const auto& r) { return r.status == RecordStatus::Completed; }));
  for (const auto* e : engines)
    for (const auto* p : providers)
      EXPECT_EQ(ids(store.query({{"engine", e}, {"provider", p}})),
                oracle([&](const auto& r) { return r.engine == e && r.provider == p; }));
  EXPECT_EQ(ids(store.query({{"parameters.command", "python train.py"}})).size(), 40u);
  EXPECT_EQ(code_of([&] { store.query({{"colour", "red"}}); }), ErrorCode::UnknownField);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Archives of the documented example run are frozen under docs/golden/archives.
// Set CLOUDREPRO_UPDATE_GOLDEN=1 to rewrite them.
TEST(GoldenArchives, ExampleRunArchivesMatch) {
  const fs::path root = CLOUDREPRO_SOURCE_DIR;
  const auto ex = root / "docs" / "examples";
  const auto req = config::parse_abstract_request(slurp(ex / "resources.ini"), slurp(ex / "application.ini"),
                                                  slurp(ex / "personal.ini"))
                       .request;
  simcloud::World world;
  const auto out = runtime::execute_request(world, req, caam::AdapterRegistry::with_builtin_adapters(),
                                            runtime::RuntimeOptions{});
  ASSERT_TRUE(out.history_url);
  const auto bundle = HistoryStore::fetch_execution(world, *out.history_url).second;
  const auto dir = root / "docs" / "golden" / "archives";
  if (std::getenv("CLOUDREPRO_UPDATE_GOLDEN")) {
    fs::create_directories(dir);
    std::ofstream(dir / "Config.zip", std::ios::binary) << bundle.config_zip;
    std::ofstream(dir / "Result.zip", std::ios::binary) << bundle.result_zip;
    GTEST_SKIP() << "golden archives rewritten";
  }
  EXPECT_EQ(bundle.config_zip, slurp(dir / "Config.zip"));
  EXPECT_EQ(bundle.result_zip, slurp(dir / "Result.zip"));
}

}  // namespace
}  // namespace cloudrepro::history
