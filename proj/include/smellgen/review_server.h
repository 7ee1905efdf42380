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

// JSON-over-HTTP front end of the review store. The routes are documented
// in docs/api.md.

#ifndef SMELLGEN_REVIEW_SERVER_H_
#define SMELLGEN_REVIEW_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>

#include "smellgen/dataset.h"
#include "smellgen/review.h"

namespace smellgen {

inline constexpr char kReviewerHeader[] = "X-Reviewer-Id";

struct ServerOptions {
  // Directory the export route writes dataset.jsonl and meta.json into.
  std::filesystem::path export_dir;
  DatasetMeta meta;
};

class ReviewServer {
 public:
  ReviewServer(ReviewStore& store, ServerOptions options);
  ~ReviewServer();

  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  // Binds without serving. Port 0 picks a free port; returns the bound
  // port or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind().
  bool Serve();
  void Stop();
  // Blocks until the server accepts connections.
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace smellgen

#endif  // SMELLGEN_REVIEW_SERVER_H_
