// Copyright 2026 The smellgen Authors
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

#include "smellgen/review_server.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include <httplib.h>
#include <unistd.h>

#include <filesystem>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace smellgen {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ::testing::HasSubstr;

SampleRecord Pending(int i) {
  SampleRecord r;
  r.smell = Smell::kLongMethod;
  r.group = Group::kManual;
  r.code = "void m" + std::to_string(i) + "() {\n  a();\n  b();\n  c();\n}";
  r.metrics.loc = 20;
  r.metrics.nfdi = 0;
  r.likelihood = Likelihood::kModerate;
  r.advisor = Verdict::kNegative;
  r.provenance.project = "demo";
  r.provenance.entity = "d.C#m" + std::to_string(i) + "/0";
  r.provenance.pattern = "ORIGINAL";
  r.provenance.rule_id = "LM.T1.M3";
  r.provenance.pipeline_version = std::string(kPipelineVersion);
  r.id = ComputeRecordId(r);
  return r;
}

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("smellgen_http_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    for (int i = 0; i < 4; ++i) records_.push_back(Pending(i));
    store_ = std::make_unique<ReviewStore>(records_, dir_ / "log.jsonl");
    ServerOptions o;
    o.export_dir = dir_ / "out";
    server_ = std::make_unique<ReviewServer>(*store_, o);
    port_ = server_->Bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->Serve(); });
    server_->WaitUntilReady();
  }

  void TearDown() override {
    server_->Stop();
    thread_.join();
    fs::remove_all(dir_);
  }

  httplib::Client Client() { return httplib::Client("127.0.0.1", port_); }

  httplib::Headers As(const std::string& reviewer) {
    return {{kReviewerHeader, reviewer}};
  }

  json AnnotationBody(const std::string& id, bool positive) {
    json a;
    a["sample_id"] = id;
    a["verdict"] = positive ? "POSITIVE" : "NEGATIVE";
    a["answers"] = {{"LM.Q1", positive}, {"LM.Q2", false}, {"LM.Q3", positive}};
    a["action"] = positive ? json{{"kind", "EXTRACT_LINES"},
                                  {"lines", {{2, 3}}}}
                           : json(nullptr);
    return a;
  }

  fs::path dir_;
  std::vector<SampleRecord> records_;
  std::unique_ptr<ReviewStore> store_;
  std::unique_ptr<ReviewServer> server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServerTest, HealthAndChecklist) {
  httplib::Client c = Client();
  auto health = c.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");
  auto list = c.Get("/api/checklist/FEATURE_ENVY");
  ASSERT_TRUE(list);
  ASSERT_EQ(list->status, 200);
  json j = json::parse(list->body);
  EXPECT_EQ(j["questions"].size(), 5u);
  EXPECT_EQ(j["questions"][4]["answer_kind"], "ACTION");
  EXPECT_EQ(c.Get("/api/checklist/GOD_CLASS")->status, 404);
}

TEST_F(ServerTest, NextNeedsReviewerAndLeases) {
  httplib::Client c = Client();
  auto anon = c.Get("/api/next");
  ASSERT_TRUE(anon);
  EXPECT_EQ(anon->status, 400);
  EXPECT_THAT(anon->body, HasSubstr(kReviewerHeader));

  auto a = c.Get("/api/next", As("ana"));
  ASSERT_EQ(a->status, 200);
  json ja = json::parse(a->body);
  EXPECT_EQ(ja["sample"]["id"], records_[0].id);
  EXPECT_EQ(ja["checklist"]["smell"], "LONG_METHOD");
  EXPECT_TRUE(ja["lease_expires"].is_string());
  auto b = c.Get("/api/next", As("bo"));
  EXPECT_EQ(json::parse(b->body)["sample"]["id"], records_[1].id);
  EXPECT_EQ(c.Get("/api/next?smell=LARGE_CLASS", As("bo"))->status, 204);
  EXPECT_EQ(c.Get("/api/next?smell=BIG", As("bo"))->status, 400);
}

TEST_F(ServerTest, AnnotateStatusCodes) {
  httplib::Client c = Client();
  c.Get("/api/next", As("ana"));
  auto ok = c.Post("/api/annotate", As("ana"),
                   AnnotationBody(records_[0].id, true).dump(), "application/json");
  ASSERT_TRUE(ok);
  ASSERT_EQ(ok->status, 200) << ok->body;
  json stored = json::parse(ok->body);
  EXPECT_EQ(stored["accepted"], true);
  EXPECT_EQ(stored["annotation"]["reviewer_id"], "ana");

  auto dup = c.Post("/api/annotate", As("bo"),
                    AnnotationBody(records_[0].id, false).dump(),
                    "application/json");
  EXPECT_EQ(dup->status, 409);

  json out_of_range = AnnotationBody(records_[1].id, true);
  out_of_range["action"]["lines"] = {{4, 9}};
  auto bad = c.Post("/api/annotate", As("ana"), out_of_range.dump(),
                    "application/json");
  EXPECT_EQ(bad->status, 422);
  EXPECT_EQ(json::parse(bad->body)["field"], "action.lines");

  auto ghost = c.Post("/api/annotate", As("ana"),
                      AnnotationBody("0000000000000000", false).dump(),
                      "application/json");
  EXPECT_EQ(ghost->status, 404);
  EXPECT_EQ(c.Post("/api/annotate", As("ana"), "{oops", "application/json")
                ->status,
            400);
  json mismatch = AnnotationBody(records_[1].id, false);
  mismatch["reviewer_id"] = "bo";
  EXPECT_EQ(c.Post("/api/annotate", As("ana"), mismatch.dump(),
                   "application/json")
                ->status,
            400);
}

TEST_F(ServerTest, StatsAndExport) {
  httplib::Client c = Client();
  c.Post("/api/annotate", As("ana"), AnnotationBody(records_[2].id, false).dump(),
         "application/json");
  json st = json::parse(c.Get("/api/stats")->body);
  EXPECT_EQ(st["annotated"]["LONG_METHOD"], 1);
  EXPECT_EQ(st["pending"]["LONG_METHOD"], 3);
  EXPECT_EQ(st["exportable"], 1);

  auto ex = c.Post("/api/export");
  ASSERT_EQ(ex->status, 200) << ex->body;
  EXPECT_EQ(json::parse(ex->body)["records"], 1);
  std::vector<SampleRecord> written = read_records(dir_ / "out" / "dataset.jsonl");
  ASSERT_EQ(written.size(), 1u);
  EXPECT_EQ(written[0].label, Verdict::kNegative);
  EXPECT_THAT(written[0].provenance.label_source, HasSubstr("annotation:ana@"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "meta.json"));
}

TEST_F(ServerTest, ConcurrentClientsGetDistinctSamples) {
  std::mutex mu;
  std::vector<std::string> got;
  std::vector<std::thread> clients;
  for (int i = 0; i < 4; ++i) {
    clients.emplace_back([&, i] {
      httplib::Client c = Client();
      auto res = c.Get("/api/next", As("r" + std::to_string(i)));
      if (res && res->status == 200) {
        std::lock_guard lock(mu);
        got.push_back(json::parse(res->body)["sample"]["id"]);
      }
    });
  }
  for (std::thread& t : clients) t.join();
  EXPECT_EQ(got.size(), 4u);
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()).size(), 4u);
  EXPECT_EQ(Client().Get("/api/next", As("late"))->status, 204);
}

}  // namespace
}  // namespace smellgen
