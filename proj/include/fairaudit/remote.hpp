// Copyright 2026 The FairAudit Authors
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

#ifndef FAIRAUDIT_REMOTE_HPP_
#define FAIRAUDIT_REMOTE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "fairaudit/domain.hpp"
#include "fairaudit/gaussian.hpp"

namespace fairaudit {

// Wire protocol between the audited party and the auditor:
//   GET  /meta            -> {"kind": "finite"|"linear", "m": ..., "d": ...}
//   POST /query {"x": id} -> {"label": 1|-1}          (finite models)
//   POST /query {"x": [v0, v1, ...]} -> {"label": 1|-1}  (linear models)

/// Serves one model over HTTP. Queries are answered deterministically; the
/// server counts them but reveals nothing else.
class ModelServer {
 public:
  explicit ModelServer(Hypothesis finite_model);
  explicit ModelServer(LinearModel linear_model);
  ~ModelServer();

  ModelServer(const ModelServer&) = delete;
  ModelServer& operator=(const ModelServer&) = delete;

  /// Serve until stop(); blocks.
  void run(const std::string& host, int port);

  /// Serve on a background thread; returns the bound port (0 on failure).
  int start(const std::string& host, int port = 0);
  void stop();

  long queries_answered() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Auditor-side client implementing the oracle contract over the wire.
/// Each request is retried up to `retries` times with exponential backoff;
/// exhausting the retries is a transport error.
class RemoteOracle {
 public:
  struct Meta {
    std::string kind;     // "finite" or "linear"
    std::size_t m = 0;    // finite domain size
    std::size_t d = 0;    // linear dimension
  };

  explicit RemoteOracle(const std::string& base_url, int retries = 3,
                        int backoff_ms = 100);
  ~RemoteOracle();

  RemoteOracle(const RemoteOracle&) = delete;
  RemoteOracle& operator=(const RemoteOracle&) = delete;

  Meta meta();
  Label query_id(std::size_t id);
  Label query_point(const std::vector<double>& x);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_REMOTE_HPP_
