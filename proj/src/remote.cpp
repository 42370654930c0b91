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

#include "fairaudit/remote.hpp"

#include <atomic>
#include <chrono>
#include <optional>
#include <thread>
#include <variant>

#include <httplib.h>
#include <json.hpp>

namespace fairaudit {

namespace {
using nlohmann::json;
}

struct ModelServer::Impl {
  std::variant<Hypothesis, LinearModel> model;
  httplib::Server server;
  std::thread thread;
  std::atomic<long> queries{0};

  explicit Impl(std::variant<Hypothesis, LinearModel> m) : model(std::move(m)) {
    server.Get("/meta", [this](const httplib::Request&, httplib::Response& res) {
      json j;
      if (std::holds_alternative<Hypothesis>(model)) {
        j["kind"] = "finite";
        j["m"] = std::get<Hypothesis>(model).size();
        j["d"] = 0;
      } else {
        j["kind"] = "linear";
        j["m"] = 0;
        j["d"] = std::get<LinearModel>(model).dim();
      }
      res.set_content(j.dump(), "application/json");
    });
    server.Post("/query", [this](const httplib::Request& req,
                                 httplib::Response& res) {
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object() || !body.contains("x")) {
        res.status = 400;
        res.set_content(R"({"error":"expected {\"x\": id or vector}"})",
                        "application/json");
        return;
      }
      const json& x = body["x"];
      Label label;
      if (std::holds_alternative<Hypothesis>(model)) {
        const Hypothesis& h = std::get<Hypothesis>(model);
        if (!x.is_number_integer() ||
            x.get<long long>() < 0 ||
            x.get<std::size_t>() >= h.size()) {
          res.status = 400;
          res.set_content(R"({"error":"x must be an example id in range"})",
                          "application/json");
          return;
        }
        label = h.labels[x.get<std::size_t>()];
      } else {
        const LinearModel& m = std::get<LinearModel>(model);
        if (!x.is_array() || x.size() != m.dim()) {
          res.status = 400;
          res.set_content(R"({"error":"x must be a vector of model dimension"})",
                          "application/json");
          return;
        }
        std::vector<double> point;
        point.reserve(x.size());
        for (const auto& v : x) {
          if (!v.is_number()) {
            res.status = 400;
            res.set_content(R"({"error":"x entries must be numbers"})",
                            "application/json");
            return;
          }
          point.push_back(v.get<double>());
        }
        label = m.predict(point);
      }
      ++queries;
      json j;
      j["label"] = static_cast<int>(label);
      res.set_content(j.dump(), "application/json");
    });
  }
};

ModelServer::ModelServer(Hypothesis finite_model)
    : impl_(std::make_unique<Impl>(std::move(finite_model))) {}

ModelServer::ModelServer(LinearModel linear_model)
    : impl_(std::make_unique<Impl>(std::move(linear_model))) {}

ModelServer::~ModelServer() { stop(); }

void ModelServer::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw FaError(ErrorCode::kTransportError,
                  "model server: cannot listen on " + host + ":" +
                      std::to_string(port));
  }
}

int ModelServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound <= 0) return 0;
  } else if (!impl_->server.bind_to_port(host, port)) {
    return 0;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void ModelServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
  if (impl_ && impl_->thread.joinable()) impl_->thread.join();
}

long ModelServer::queries_answered() const { return impl_->queries.load(); }

struct RemoteOracle::Impl {
  std::string host;
  int port = 80;
  int retries;
  int backoff_ms;
  std::unique_ptr<httplib::Client> client;

  Impl(const std::string& base_url, int retries_in, int backoff_in)
      : retries(retries_in), backoff_ms(backoff_in) {
    std::string url = base_url;
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) == 0) url = url.substr(scheme.size());
    while (!url.empty() && url.back() == '/') url.pop_back();
    auto colon = url.find(':');
    if (colon == std::string::npos) {
      host = url;
    } else {
      host = url.substr(0, colon);
      port = std::stoi(url.substr(colon + 1));
    }
    if (host.empty()) {
      throw FaError(ErrorCode::kInvalidInput,
                    "remote oracle: cannot parse url '" + base_url + "'");
    }
    client = std::make_unique<httplib::Client>(host, port);
    client->set_connection_timeout(5, 0);
    client->set_read_timeout(30, 0);
  }

  json request(const std::string& what, const std::optional<std::string>& body) {
    int wait = backoff_ms;
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(wait));
        wait *= 2;
      }
      httplib::Result res =
          body ? client->Post(what, *body, "application/json")
               : client->Get(what);
      if (!res) {
        last_error = "transport failure (" + httplib::to_string(res.error()) + ")";
        continue;
      }
      if (res->status != 200) {
        // The server answered; a malformed request will not improve with
        // retrying.
        throw FaError(ErrorCode::kTransportError,
                      "remote oracle: " + what + " returned status " +
                          std::to_string(res->status) + ": " + res->body);
      }
      json j = json::parse(res->body, nullptr, false);
      if (j.is_discarded()) {
        last_error = "unparsable response body";
        continue;
      }
      return j;
    }
    throw FaError(ErrorCode::kTransportError,
                  "remote oracle: " + what + " failed after " +
                      std::to_string(retries + 1) + " attempts: " + last_error);
  }
};

RemoteOracle::RemoteOracle(const std::string& base_url, int retries,
                           int backoff_ms)
    : impl_(std::make_unique<Impl>(base_url, retries, backoff_ms)) {}

RemoteOracle::~RemoteOracle() = default;

RemoteOracle::Meta RemoteOracle::meta() {
  json j = impl_->request("/meta", std::nullopt);
  Meta meta;
  meta.kind = j.value("kind", "");
  meta.m = j.value("m", std::size_t{0});
  meta.d = j.value("d", std::size_t{0});
  if (meta.kind != "finite" && meta.kind != "linear") {
    throw FaError(ErrorCode::kTransportError,
                  "remote oracle: unknown model kind '" + meta.kind + "'");
  }
  return meta;
}

namespace {

Label parse_label(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("label") ||
      !j["label"].is_number_integer()) {
    throw FaError(ErrorCode::kTransportError,
                  "remote oracle: response lacks a label");
  }
  int v = j["label"].get<int>();
  if (v != 1 && v != -1) {
    throw FaError(ErrorCode::kTransportError,
                  "remote oracle: label must be 1 or -1, got " +
                      std::to_string(v));
  }
  return static_cast<Label>(v);
}

}  // namespace

Label RemoteOracle::query_id(std::size_t id) {
  json body;
  body["x"] = id;
  return parse_label(impl_->request("/query", body.dump()));
}

Label RemoteOracle::query_point(const std::vector<double>& x) {
  json body;
  body["x"] = x;
  return parse_label(impl_->request("/query", body.dump()));
}

}  // namespace fairaudit
