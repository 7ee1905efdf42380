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

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <optional>
#include <string>
#include <utility>

namespace smellgen {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr char kJson[] = "application/json";

void Reply(httplib::Response& res, int status, const ojson& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void Error(httplib::Response& res, int status, const std::string& field,
           const std::string& reason) {
  ojson body;
  body["accepted"] = false;
  body["field"] = field;
  body["reason"] = reason;
  Reply(res, status, body);
}

std::optional<std::string> Reviewer(const httplib::Request& req,
                                    httplib::Response& res) {
  std::string id = req.get_header_value(kReviewerHeader);
  if (id.empty()) {
    Error(res, 400, "reviewer_id",
          std::string("missing ") + kReviewerHeader + " header");
    return std::nullopt;
  }
  return id;
}

int StatusFor(Rejection::Code code) {
  switch (code) {
    case Rejection::Code::kNotFound:
      return 404;
    case Rejection::Code::kConflict:
      return 409;
    case Rejection::Code::kInvalid:
      return 422;
  }
  return 422;
}

}  // namespace

struct ReviewServer::Impl {
  ReviewStore& store;
  ServerOptions options;
  httplib::Server http;

  Impl(ReviewStore& s, ServerOptions o) : store(s), options(std::move(o)) {}

  void Install();
  void Next(const httplib::Request& req, httplib::Response& res);
  void Annotate(const httplib::Request& req, httplib::Response& res);
  void Export(httplib::Response& res);
};

void ReviewServer::Impl::Install() {
  http.set_post_routing_handler([](const httplib::Request&,
                                   httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers",
                   std::string("Content-Type, ") + kReviewerHeader);
  });
  http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  http.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, ojson{{"status", "ok"}});
  });
  http.Get(R"(/api/checklist/([A-Z_]+))",
           [](const httplib::Request& req, httplib::Response& res) {
             std::optional<Smell> smell = ParseSmell(req.matches[1].str());
             if (!smell) {
               Error(res, 404, "smell", "unknown smell " + req.matches[1].str());
               return;
             }
             Reply(res, 200, ChecklistToJson(ChecklistFor(*smell)));
           });
  http.Get("/api/next", [this](const httplib::Request& req,
                               httplib::Response& res) { Next(req, res); });
  http.Post("/api/annotate",
            [this](const httplib::Request& req, httplib::Response& res) {
              Annotate(req, res);
            });
  http.Get("/api/stats", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, ReviewStatsToJson(store.stats()));
  });
  http.Post("/api/export", [this](const httplib::Request&,
                                  httplib::Response& res) { Export(res); });
  http.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    spdlog::error("request failed: {}", what);
    Error(res, 500, "", what);
  });
}

void ReviewServer::Impl::Next(const httplib::Request& req,
                              httplib::Response& res) {
  std::optional<std::string> reviewer = Reviewer(req, res);
  if (!reviewer) return;
  std::optional<Smell> smell;
  if (req.has_param("smell")) {
    smell = ParseSmell(req.get_param_value("smell"));
    if (!smell) {
      Error(res, 400, "smell", "unknown smell " + req.get_param_value("smell"));
      return;
    }
  }
  std::optional<QueueItem> item = store.queue_next(*reviewer, smell);
  if (!item) {
    res.status = 204;
    return;
  }
  ojson body;
  body["sample"] = RecordToJson(item->record);
  body["checklist"] = ChecklistToJson(*item->checklist);
  if (item->record.smell == Smell::kFeatureEnvy) {
    body["candidate_targets"] = CandidateTargets(item->record);
  } else if (item->record.smell == Smell::kLargeClass) {
    body["members"] = DeclaredMembers(item->record);
  }
  body["lease_expires"] = FormatUtc(item->lease_expires);
  Reply(res, 200, body);
}

void ReviewServer::Impl::Annotate(const httplib::Request& req,
                                  httplib::Response& res) {
  std::optional<std::string> reviewer = Reviewer(req, res);
  if (!reviewer) return;
  Annotation a;
  try {
    json body = json::parse(req.body);
    a = AnnotationFromJson(body);
  } catch (const std::exception& e) {
    Error(res, 400, "body", e.what());
    return;
  }
  if (!a.reviewer_id.empty() && a.reviewer_id != *reviewer) {
    Error(res, 400, "reviewer_id", "body and header name different reviewers");
    return;
  }
  a.reviewer_id = *reviewer;
  SubmitResult result = store.submit_annotation(std::move(a));
  if (!result.accepted) {
    Error(res, StatusFor(result.rejection.code), result.rejection.field,
          result.rejection.reason);
    return;
  }
  ojson body;
  body["accepted"] = true;
  body["annotation"] = AnnotationToJson(*result.stored);
  Reply(res, 200, body);
}

void ReviewServer::Impl::Export(httplib::Response& res) {
  if (options.export_dir.empty()) {
    Error(res, 409, "", "server started without an export directory");
    return;
  }
  std::vector<SampleRecord> written =
      ExportDataset(store.export_final(), options.export_dir, options.meta);
  ojson body;
  body["records"] = written.size();
  body["path"] = (options.export_dir / "dataset.jsonl").string();
  body["stats"] = StatsToJson(compute_stats(written));
  Reply(res, 200, body);
}

ReviewServer::ReviewServer(ReviewStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
  impl_->Install();
}

ReviewServer::~ReviewServer() { Stop(); }

int ReviewServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool ReviewServer::Serve() { return impl_->http.listen_after_bind(); }

void ReviewServer::Stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

void ReviewServer::WaitUntilReady() const { impl_->http.wait_until_ready(); }

}  // namespace smellgen
