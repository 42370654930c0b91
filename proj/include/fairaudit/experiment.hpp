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

#ifndef FAIRAUDIT_EXPERIMENT_HPP_
#define FAIRAUDIT_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/audit_result.hpp"
#include "fairaudit/domain.hpp"

namespace fairaudit {

/// In-config class source when no file is given.
struct GeneratorSpec {
  std::string kind;  // "shattered" | "random" | "threshold"
  int n = 4;         // shattered size
  int m = 8;         // random: domain size
  int k = 8;         // random/threshold: class size
  std::uint64_t seed = 0;
  std::string csv;   // threshold: dataset path
  std::string group_column;
  std::vector<std::string> feature_columns;
};

struct ExperimentConfig {
  std::string class_file;                 // exclusive with generator
  std::optional<GeneratorSpec> generator;
  std::size_t target = 0;                 // index of the audited hypothesis
  std::vector<std::string> methods;       // iid | cal | minimax | oracle
  std::vector<long> budgets;              // strictly increasing
  int repeats = 1;
  double eps = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string out;                        // CSV path ("" = caller handles)
  std::string cal_mode = "checked";       // checked | sampled

  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
};

struct ExperimentRow {
  std::string method;
  long budget = 0;
  std::uint64_t seed = 0;
  long queries = 0;
  double estimate = 0.0;
  double true_mu = 0.0;
  double abs_error = 0.0;
  double diameter = 0.0;
  double avg_err = 0.0;
  bool truncated = false;
  std::string error;  // empty on success
};

struct ExperimentTables {
  std::vector<ExperimentRow> rows;
  std::string runs_csv;
  std::string summary_csv;
};

/// Resolve the class source named by the config.
HypothesisClass materialize_class(const ExperimentConfig& cfg);

/// Run every (method, budget, repeat) cell, evaluating each transcript's
/// manipulation-proofness diameter and average error against the target.
/// Cells run in parallel; output order and bytes depend only on the config.
ExperimentTables run_experiment(const ExperimentConfig& cfg,
                                const HypothesisClass& cls);
ExperimentTables run_experiment(const ExperimentConfig& cfg);

/// One audit at a budget; shared by the experiment runner and the CLI.
AuditResult run_method(const std::string& method, const HypothesisClass& cls,
                       std::size_t target, double eps, double delta,
                       std::optional<long> budget, std::uint64_t seed,
                       const std::string& cal_mode = "checked");

}  // namespace fairaudit

#endif  // FAIRAUDIT_EXPERIMENT_HPP_
