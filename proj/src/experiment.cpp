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

#include "fairaudit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

#include <json.hpp>

#include "fairaudit/baselines.hpp"
#include "fairaudit/class_io.hpp"
#include "fairaudit/cost.hpp"
#include "fairaudit/harness.hpp"
#include "fairaudit/oracle_auditor.hpp"
#include "fairaudit/rng.hpp"

namespace fairaudit {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw FaError(ErrorCode::kParseError, "experiment config: not valid JSON");
  }
  ExperimentConfig cfg;
  if (j.contains("class_file")) cfg.class_file = j["class_file"].get<std::string>();
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    GeneratorSpec spec;
    spec.kind = g.value("kind", "");
    spec.n = g.value("n", 4);
    spec.m = g.value("m", 8);
    spec.k = g.value("k", 8);
    spec.seed = g.value("seed", std::uint64_t{0});
    spec.csv = g.value("csv", "");
    spec.group_column = g.value("group_column", "");
    if (g.contains("feature_columns")) {
      for (const auto& f : g["feature_columns"]) {
        spec.feature_columns.push_back(f.get<std::string>());
      }
    }
    cfg.generator = std::move(spec);
  }
  cfg.target = j.value("target", std::size_t{0});
  if (j.contains("methods")) {
    for (const auto& m : j["methods"]) cfg.methods.push_back(m.get<std::string>());
  }
  if (j.contains("budgets")) {
    for (const auto& b : j["budgets"]) cfg.budgets.push_back(b.get<long>());
  }
  cfg.repeats = j.value("repeats", 1);
  cfg.eps = j.value("eps", 0.1);
  cfg.delta = j.value("delta", 0.1);
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.out = j.value("out", "");
  cfg.cal_mode = j.value("cal_mode", "checked");
  cfg.validate();
  return cfg;
}

std::string ExperimentConfig::to_json() const {
  json j;
  if (!class_file.empty()) j["class_file"] = class_file;
  if (generator) {
    json g;
    g["kind"] = generator->kind;
    g["n"] = generator->n;
    g["m"] = generator->m;
    g["k"] = generator->k;
    g["seed"] = generator->seed;
    if (!generator->csv.empty()) {
      g["csv"] = generator->csv;
      g["group_column"] = generator->group_column;
      g["feature_columns"] = generator->feature_columns;
    }
    j["generator"] = std::move(g);
  }
  j["target"] = target;
  j["methods"] = methods;
  j["budgets"] = budgets;
  j["repeats"] = repeats;
  j["eps"] = eps;
  j["delta"] = delta;
  j["seed"] = seed;
  if (!out.empty()) j["out"] = out;
  j["cal_mode"] = cal_mode;
  return j.dump(2);
}

void ExperimentConfig::validate() const {
  if (class_file.empty() == !generator) {
    throw FaError(ErrorCode::kInvalidInput,
                  "experiment config: exactly one of class_file or generator");
  }
  if (methods.empty()) {
    throw FaError(ErrorCode::kInvalidInput, "experiment config: no methods");
  }
  for (const auto& m : methods) {
    if (m != "iid" && m != "cal" && m != "minimax" && m != "oracle") {
      throw FaError(ErrorCode::kInvalidInput,
                    "experiment config: unknown method '" + m + "'");
    }
  }
  if (budgets.empty()) {
    throw FaError(ErrorCode::kInvalidInput, "experiment config: no budgets");
  }
  for (std::size_t i = 1; i < budgets.size(); ++i) {
    if (budgets[i] <= budgets[i - 1]) {
      throw FaError(ErrorCode::kInvalidInput,
                    "experiment config: budgets must be strictly increasing");
    }
  }
  if (repeats < 1) {
    throw FaError(ErrorCode::kInvalidInput, "experiment config: repeats < 1");
  }
  if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw FaError(ErrorCode::kInvalidInput, "experiment config: bad eps/delta");
  }
  if (cal_mode != "checked" && cal_mode != "sampled") {
    throw FaError(ErrorCode::kInvalidInput,
                  "experiment config: cal_mode must be checked or sampled");
  }
}

HypothesisClass materialize_class(const ExperimentConfig& cfg) {
  if (!cfg.class_file.empty()) return load_class_file(cfg.class_file);
  const GeneratorSpec& g = *cfg.generator;
  if (g.kind == "shattered") return gen_shattered(g.n).cls;
  if (g.kind == "random") return gen_random_class(g.m, g.k, g.seed);
  if (g.kind == "threshold") {
    Dataset ds = ingest_csv(g.csv, g.group_column, g.feature_columns);
    return gen_threshold_class(ds, g.k, g.seed);
  }
  throw FaError(ErrorCode::kInvalidInput,
                "experiment config: unknown generator kind '" + g.kind + "'");
}

namespace {

// Shared per-experiment context for the minimax method's memo table.
struct MinimaxContext {
  std::optional<CostTable> table;
};

AuditResult run_method_impl(const std::string& method,
                            const HypothesisClass& cls, std::size_t target,
                            double eps, double delta, std::optional<long> budget,
                            std::uint64_t seed, const std::string& cal_mode,
                            MinimaxContext* ctx) {
  auto oracle = make_counting_oracle(cls.hypothesis(target));
  if (method == "iid") {
    return iid_audit(oracle, cls.domain(), eps, delta, seed, budget);
  }
  if (method == "cal") {
    CalMode mode = cal_mode == "sampled" ? CalMode::kSampled : CalMode::kChecked;
    return phased_cal_audit(oracle, cls, eps, seed, mode, budget);
  }
  if (method == "oracle") {
    return oracle_audit(oracle, cls, eps, delta, seed, budget);
  }
  if (method == "minimax") {
    if (ctx) {
      return minimax_audit(oracle, cls, eps, *ctx->table, budget);
    }
    CostTable table(cls, eps);
    return minimax_audit(oracle, cls, eps, table, budget);
  }
  throw FaError(ErrorCode::kInvalidInput, "unknown method '" + method + "'");
}

}  // namespace

AuditResult run_method(const std::string& method, const HypothesisClass& cls,
                       std::size_t target, double eps, double delta,
                       std::optional<long> budget, std::uint64_t seed,
                       const std::string& cal_mode) {
  return run_method_impl(method, cls, target, eps, delta, budget, seed,
                         cal_mode, nullptr);
}

ExperimentTables run_experiment(const ExperimentConfig& cfg) {
  HypothesisClass cls = materialize_class(cfg);
  return run_experiment(cfg, cls);
}

ExperimentTables run_experiment(const ExperimentConfig& cfg,
                                const HypothesisClass& cls) {
  cfg.validate();
  if (cfg.target >= cls.size()) {
    throw FaError(ErrorCode::kInvalidInput,
                  "experiment config: target index out of range");
  }
  const double true_mu = cls.mu_of(cfg.target);

  MinimaxContext ctx;
  bool uses_minimax =
      std::find(cfg.methods.begin(), cfg.methods.end(), "minimax") !=
      cfg.methods.end();
  if (uses_minimax) ctx.table.emplace(cls, cfg.eps);

  struct Cell {
    std::string method;
    long budget;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const auto& method : cfg.methods) {
    for (long budget : cfg.budgets) {
      for (int rep = 0; rep < cfg.repeats; ++rep) {
        // One stream per (method, repeat): the same run observed at larger
        // budgets extends its own transcript rather than resampling.
        std::uint64_t cell_seed = Rng::derive(
            cfg.seed, method + "#" + std::to_string(rep));
        cells.push_back(Cell{method, budget, cell_seed});
      }
    }
  }

  std::vector<ExperimentRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      ExperimentRow row;
      row.method = cell.method;
      row.budget = cell.budget;
      row.seed = cell.seed;
      row.true_mu = true_mu;
      try {
        AuditResult r = run_method_impl(cell.method, cls, cfg.target, cfg.eps,
                                        cfg.delta, cell.budget, cell.seed,
                                        cfg.cal_mode,
                                        uses_minimax ? &ctx : nullptr);
        row.queries = r.queries;
        row.truncated = r.truncated;
        VersionSpace v = version_space(cls, r.transcript);
        DiamResult d = diam_mu(v, cls);
        row.diameter = d.value;
        row.avg_err = avg_error(cls, r.transcript, true_mu);
        // Budget-stopped runs report the version-space midpoint.
        row.estimate = r.truncated
                           ? 0.5 * (cls.mu_of(d.argmax) + cls.mu_of(d.argmin))
                           : r.estimate;
        row.abs_error = std::fabs(row.estimate - true_mu);
      } catch (const FaError& e) {
        row.error = std::string(error_code_name(e.code())) + ": " + e.what();
      }
      rows[i] = std::move(row);
    }
  };
  unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, 8);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  ExperimentTables tables;
  tables.rows = std::move(rows);

  std::string runs =
      "method,budget,seed,queries,estimate,true_mu,abs_error,diameter,"
      "avg_error,truncated,error\n";
  for (const ExperimentRow& r : tables.rows) {
    runs += r.method + "," + std::to_string(r.budget) + "," +
            std::to_string(r.seed) + "," + std::to_string(r.queries) + "," +
            fmt_double(r.estimate) + "," + fmt_double(r.true_mu) + "," +
            fmt_double(r.abs_error) + "," + fmt_double(r.diameter) + "," +
            fmt_double(r.avg_err) + "," + (r.truncated ? "1" : "0") + "," +
            r.error + "\n";
  }
  tables.runs_csv = std::move(runs);

  // Normal-approximation 95% intervals over the repeats of each cell group.
  std::string summary =
      "method,budget,n,mean_diameter,ci95_diameter,mean_avg_error,"
      "ci95_avg_error,mean_abs_error,ci95_abs_error\n";
  auto mean_ci = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
    double ci = 1.96 * std::sqrt(var / static_cast<double>(xs.size()));
    return std::make_pair(mean, ci);
  };
  for (const auto& method : cfg.methods) {
    for (long budget : cfg.budgets) {
      std::vector<double> diam, avg, abs;
      for (const ExperimentRow& r : tables.rows) {
        if (r.method != method || r.budget != budget || !r.error.empty()) {
          continue;
        }
        diam.push_back(r.diameter);
        avg.push_back(r.avg_err);
        abs.push_back(r.abs_error);
      }
      if (diam.empty()) continue;
      auto [md, cd] = mean_ci(diam);
      auto [ma, ca] = mean_ci(avg);
      auto [me, ce] = mean_ci(abs);
      summary += method + "," + std::to_string(budget) + "," +
                 std::to_string(diam.size()) + "," + fmt_double(md) + "," +
                 fmt_double(cd) + "," + fmt_double(ma) + "," + fmt_double(ca) +
                 "," + fmt_double(me) + "," + fmt_double(ce) + "\n";
    }
  }
  tables.summary_csv = std::move(summary);

  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      throw FaError(ErrorCode::kIoError, "cannot write " + cfg.out);
    }
    out << tables.runs_csv;
    std::ofstream sum(cfg.out + ".summary.csv", std::ios::binary);
    if (!sum) {
      throw FaError(ErrorCode::kIoError, "cannot write " + cfg.out + ".summary.csv");
    }
    sum << tables.summary_csv;
  }
  return tables;
}

}  // namespace fairaudit
