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

#include "fairaudit/class_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fairaudit/bitset.hpp"

namespace fairaudit {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw FaError(ErrorCode::kParseError, "class file: not valid JSON");
  }
  return j;
}

}  // namespace

HypothesisClass load_class_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("pi1") || !j.contains("examples") ||
      !j.contains("hypotheses")) {
    throw FaError(ErrorCode::kParseError,
                  "class file: expected object with pi1, examples, hypotheses");
  }
  if (!j["pi1"].is_number()) {
    throw FaError(ErrorCode::kParseError, "class file: pi1 must be a number");
  }
  double pi1 = j["pi1"].get<double>();

  if (!j["examples"].is_array()) {
    throw FaError(ErrorCode::kParseError, "class file: examples must be an array");
  }
  std::vector<Example> examples;
  std::size_t idx = 0;
  for (const auto& je : j["examples"]) {
    std::string at = "examples[" + std::to_string(idx) + "]: ";
    if (!je.is_object() || !je.contains("id") || !je.contains("group") ||
        !je.contains("p")) {
      throw FaError(ErrorCode::kParseError, at + "expected {id, group, p}");
    }
    if (!je["id"].is_number_integer() || !je["group"].is_number_integer() ||
        !je["p"].is_number()) {
      throw FaError(ErrorCode::kParseError, at + "wrong field types");
    }
    Example e;
    e.id = je["id"].get<int>();
    e.group = je["group"].get<int>();
    double p = je["p"].get<double>();
    if (e.group == 1) {
      e.p1 = p;
    } else if (e.group == 0) {
      e.p0 = p;
    } else {
      throw FaError(ErrorCode::kParseError, at + "group must be 0 or 1");
    }
    examples.push_back(e);
    ++idx;
  }

  if (!j["hypotheses"].is_array()) {
    throw FaError(ErrorCode::kParseError,
                  "class file: hypotheses must be an array");
  }
  std::vector<Hypothesis> hypotheses;
  idx = 0;
  for (const auto& jh : j["hypotheses"]) {
    std::string at = "hypotheses[" + std::to_string(idx) + "]: ";
    if (!jh.is_array()) {
      throw FaError(ErrorCode::kParseError, at + "expected a label array");
    }
    Hypothesis h;
    for (const auto& jl : jh) {
      if (!jl.is_number_integer()) {
        throw FaError(ErrorCode::kParseError, at + "labels must be integers");
      }
      int v = jl.get<int>();
      if (v != 1 && v != -1) {
        throw FaError(ErrorCode::kParseError, at + "labels must be +1 or -1");
      }
      h.labels.push_back(static_cast<Label>(v));
    }
    hypotheses.push_back(std::move(h));
    ++idx;
  }

  // Domain and class constructors enforce the remaining invariants and
  // produce element-specific messages of their own.
  try {
    return HypothesisClass(Domain(std::move(examples), pi1),
                           std::move(hypotheses));
  } catch (const FaError& e) {
    throw FaError(ErrorCode::kParseError, std::string("class file: ") + e.what());
  }
}

HypothesisClass load_class_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FaError(ErrorCode::kIoError, "cannot open class file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_class_json(ss.str());
}

std::string class_to_json(const HypothesisClass& cls) {
  json j;
  j["pi1"] = cls.domain().pi1();
  j["examples"] = json::array();
  for (const Example& e : cls.domain().examples()) {
    j["examples"].push_back(
        {{"id", e.id}, {"group", e.group}, {"p", e.group == 1 ? e.p1 : e.p0}});
  }
  j["hypotheses"] = json::array();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    json labels = json::array();
    for (Label l : cls.hypothesis(i).labels) labels.push_back(static_cast<int>(l));
    j["hypotheses"].push_back(labels);
  }
  return j.dump();
}

void save_class_file(const HypothesisClass& cls, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FaError(ErrorCode::kIoError, "cannot write class file: " + path);
  }
  out << class_to_json(cls) << "\n";
}

std::uint64_t class_hash(const HypothesisClass& cls) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  double pi1 = cls.domain().pi1();
  h = fnv1a64(&pi1, sizeof(pi1), h);
  for (const Example& e : cls.domain().examples()) {
    h = fnv1a64(&e.group, sizeof(e.group), h);
    h = fnv1a64(&e.p0, sizeof(e.p0), h);
    h = fnv1a64(&e.p1, sizeof(e.p1), h);
  }
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& labels = cls.hypothesis(i).labels;
    h = fnv1a64(labels.data(), labels.size() * sizeof(Label), h);
  }
  return h;
}

}  // namespace fairaudit
