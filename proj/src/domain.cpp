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

#include "fairaudit/domain.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace fairaudit {

Domain::Domain(std::vector<Example> examples, double pi1)
    : examples_(std::move(examples)), pi1_(pi1) {
  validate();
}

void Domain::validate() const {
  if (examples_.empty()) {
    throw FaError(ErrorCode::kInvalidInput, "domain: no examples");
  }
  if (!(pi1_ > 0.0 && pi1_ < 1.0)) {
    throw FaError(ErrorCode::kInvalidInput,
                  "domain: pi1 must lie strictly inside (0,1), got " +
                      std::to_string(pi1_));
  }
  double sum0 = 0.0, sum1 = 0.0;
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    const Example& e = examples_[i];
    std::string at = "examples[" + std::to_string(i) + "]: ";
    if (e.id != static_cast<int>(i)) {
      throw FaError(ErrorCode::kInvalidInput,
                    at + "id " + std::to_string(e.id) +
                        " does not match its position");
    }
    if (e.group != 0 && e.group != 1) {
      throw FaError(ErrorCode::kInvalidInput, at + "group must be 0 or 1");
    }
    if (e.p0 < 0.0 || e.p1 < 0.0 || !std::isfinite(e.p0) ||
        !std::isfinite(e.p1)) {
      throw FaError(ErrorCode::kInvalidInput, at + "negative or non-finite mass");
    }
    // Each example lives in exactly one subpopulation.
    if (e.group == 1 && e.p0 != 0.0) {
      throw FaError(ErrorCode::kInvalidInput, at + "group-1 example has p0 != 0");
    }
    if (e.group == 0 && e.p1 != 0.0) {
      throw FaError(ErrorCode::kInvalidInput, at + "group-0 example has p1 != 0");
    }
    sum0 += e.p0;
    sum1 += e.p1;
  }
  if (std::fabs(sum0 - 1.0) > kMassTolerance) {
    throw FaError(ErrorCode::kInvalidInput,
                  "domain: group-0 masses sum to " + std::to_string(sum0));
  }
  if (std::fabs(sum1 - 1.0) > kMassTolerance) {
    throw FaError(ErrorCode::kInvalidInput,
                  "domain: group-1 masses sum to " + std::to_string(sum1));
  }
}

double mu(const Hypothesis& h, const Domain& domain) {
  if (h.size() != domain.size()) {
    throw FaError(ErrorCode::kInvalidInput,
                  "mu: hypothesis length " + std::to_string(h.size()) +
                      " does not match domain size " +
                      std::to_string(domain.size()));
  }
  double pos1 = 0.0, pos0 = 0.0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (h.labels[i] > 0) {
      pos1 += domain.example(i).p1;
      pos0 += domain.example(i).p0;
    }
  }
  return pos1 - pos0;
}

double disagreement_mass(const Hypothesis& a, const Hypothesis& b,
                         const Domain& domain) {
  if (a.size() != domain.size() || b.size() != domain.size()) {
    throw FaError(ErrorCode::kInvalidInput,
                  "disagreement_mass: hypothesis length mismatch");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (a.labels[i] != b.labels[i]) mass += domain.marginal(i);
  }
  return mass;
}

HypothesisClass::HypothesisClass(Domain domain,
                                 std::vector<Hypothesis> hypotheses)
    : domain_(std::move(domain)), hypotheses_(std::move(hypotheses)) {
  if (hypotheses_.empty()) {
    throw FaError(ErrorCode::kInvalidInput, "hypothesis class: empty");
  }
  std::set<std::vector<Label>> seen;
  for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
    if (hypotheses_[i].size() != domain_.size()) {
      throw FaError(ErrorCode::kInvalidInput,
                    "hypotheses[" + std::to_string(i) + "]: length " +
                        std::to_string(hypotheses_[i].size()) +
                        " does not match domain size " +
                        std::to_string(domain_.size()));
    }
    for (Label l : hypotheses_[i].labels) {
      if (l != 1 && l != -1) {
        throw FaError(ErrorCode::kInvalidInput,
                      "hypotheses[" + std::to_string(i) +
                          "]: labels must be +1 or -1");
      }
    }
    if (!seen.insert(hypotheses_[i].labels).second) {
      throw FaError(ErrorCode::kInvalidInput,
                    "hypotheses[" + std::to_string(i) + "]: duplicate labeling");
    }
  }
  mu_.reserve(hypotheses_.size());
  for (const Hypothesis& h : hypotheses_) mu_.push_back(mu(h, domain_));
}

void Transcript::add(int id, Label y) {
  for (const auto& [x, label] : entries_) {
    if (x == id) {
      if (label != y) {
        throw FaError(ErrorCode::kInvalidInput,
                      "transcript: conflicting labels for example " +
                          std::to_string(id));
      }
      return;
    }
  }
  entries_.emplace_back(id, y);
}

bool Transcript::contains(int id) const {
  for (const auto& [x, label] : entries_) {
    if (x == id) return true;
  }
  return false;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kEmptyVersionSpace: return "empty-version-space";
    case ErrorCode::kNonRealizableOracle: return "non-realizable-oracle";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kNoQueryNeeded: return "no-query-needed";
    case ErrorCode::kNoCrossing: return "no-crossing";
    case ErrorCode::kNotPsd: return "not-psd";
    case ErrorCode::kSizeLimit: return "size-limit";
    case ErrorCode::kDegenerateClass: return "degenerate-class";
    case ErrorCode::kFeasibilityTimeout: return "feasibility-timeout";
    case ErrorCode::kIoError: return "io-error";
    case ErrorCode::kTransportError: return "transport-error";
  }
  return "unknown";
}

}  // namespace fairaudit
