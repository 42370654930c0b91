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

#include "fairaudit.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "fairaudit/baselines.hpp"
#include "fairaudit/class_io.hpp"
#include "fairaudit/cost.hpp"
#include "fairaudit/experiment.hpp"
#include "fairaudit/gaussian.hpp"
#include "fairaudit/harness.hpp"
#include "fairaudit/oracle_auditor.hpp"
#include "fairaudit/remote.hpp"
#include "fairaudit/rng.hpp"

using namespace fairaudit;
using nlohmann::json;

struct fa_class {
  HypothesisClass cls;
};

namespace {

thread_local std::string g_last_error = "no error";

fa_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return FA_ERR_INVALID_INPUT;
    case ErrorCode::kParseError: return FA_ERR_PARSE;
    case ErrorCode::kEmptyVersionSpace: return FA_ERR_EMPTY_VERSION_SPACE;
    case ErrorCode::kNonRealizableOracle: return FA_ERR_NON_REALIZABLE_ORACLE;
    case ErrorCode::kInfeasible: return FA_ERR_INFEASIBLE;
    case ErrorCode::kNoQueryNeeded: return FA_ERR_NO_QUERY_NEEDED;
    case ErrorCode::kNoCrossing: return FA_ERR_NO_CROSSING;
    case ErrorCode::kNotPsd: return FA_ERR_NOT_PSD;
    case ErrorCode::kSizeLimit: return FA_ERR_SIZE_LIMIT;
    case ErrorCode::kDegenerateClass: return FA_ERR_DEGENERATE_CLASS;
    case ErrorCode::kFeasibilityTimeout: return FA_ERR_FEASIBILITY_TIMEOUT;
    case ErrorCode::kIoError: return FA_ERR_IO;
    case ErrorCode::kTransportError: return FA_ERR_TRANSPORT;
  }
  return FA_ERR_RUNTIME;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
fa_status guarded(Fn&& fn) {
  try {
    fn();
    return FA_OK;
  } catch (const FaError& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FA_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown failure";
    return FA_ERR_RUNTIME;
  }
}

fa_status require(bool ok, const char* message) {
  if (!ok) {
    g_last_error = message;
    return FA_ERR_INVALID_INPUT;
  }
  return FA_OK;
}

std::string cost_cache_path(const HypothesisClass& cls, double eps,
                            const std::string& dir) {
  char eps_buf[32];
  std::snprintf(eps_buf, sizeof(eps_buf), "%.17g", eps);
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(class_hash(cls)));
  return dir + "/" + hash_buf + "_" + eps_buf + ".cost.json";
}

json transcript_json(const Transcript& t) {
  json arr = json::array();
  for (const auto& [id, label] : t.entries()) {
    arr.push_back({id, static_cast<int>(label)});
  }
  return arr;
}

json audit_result_json(const HypothesisClass& cls, const AuditResult& r,
                       const std::string& method, double eps, double delta,
                       long budget, uint64_t seed, const double* true_mu) {
  json j;
  j["method"] = method;
  j["eps"] = eps;
  j["delta"] = delta;
  j["seed"] = seed;
  if (budget >= 0) j["budget"] = budget;
  j["estimate"] = r.estimate;
  j["queries"] = r.queries;
  j["truncated"] = r.truncated;
  j["mistakes"] = r.mistakes;
  j["transcript"] = transcript_json(r.transcript);
  VersionSpace v = version_space(cls, r.transcript);
  if (!v.empty()) {
    j["diameter"] = diam_mu(v, cls).value;
    j["version_space_size"] = v.count();
  }
  if (true_mu) {
    j["true_mu"] = *true_mu;
    j["abs_error"] = std::fabs(r.estimate - *true_mu);
    j["avg_error"] = avg_error(cls, r.transcript, *true_mu);
  }
  if (!r.oracle_rounds.empty()) {
    json rounds = json::array();
    int idx = 0;
    for (const OracleRound& round : r.oracle_rounds) {
      json rj;
      rj["round"] = idx++;
      std::vector<std::uint64_t> packed(round.hhat.size());
      for (std::size_t i = 0; i < round.hhat.size(); ++i) {
        packed[i] = round.hhat[i] > 0 ? 1 : 0;
      }
      rj["hhat_hash"] = hash_words(packed).hex();
      rj["T"] = round.queried.size();
      rj["doublings"] = round.doublings;
      rj["forced_adds"] = round.forced_adds;
      rj["mistake"] = round.mistake;
      rj["gap"] = round.gap;
      rounds.push_back(std::move(rj));
    }
    j["rounds"] = std::move(rounds);
  }
  if (!r.cal_rounds.empty()) {
    json rounds = json::array();
    for (const CalRound& round : r.cal_rounds) {
      json rj;
      rj["round"] = round.n;
      rj["sample_size"] = round.sample_size;
      rj["queried"] = round.queried.size();
      rj["resamples"] = round.resamples;
      rj["version_space_size"] = round.version_space_size;
      rounds.push_back(std::move(rj));
    }
    j["rounds"] = std::move(rounds);
  }
  return j;
}

GeneratorSpec generator_from_json(const std::string& text) {
  json g = json::parse(text, nullptr, false);
  if (g.is_discarded() || !g.is_object()) {
    throw FaError(ErrorCode::kParseError, "generator spec: not valid JSON");
  }
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
  return spec;
}

}  // namespace

extern "C" {

const char* fa_version(void) { return "0.1.0"; }

const char* fa_last_error(void) { return g_last_error.c_str(); }

void fa_string_free(char* s) { std::free(s); }

fa_status fa_class_load(const char* path, fa_class** out) {
  if (fa_status s = require(path && out, "fa_class_load: null argument")) return s;
  return guarded([&] { *out = new fa_class{load_class_file(path)}; });
}

fa_status fa_class_parse(const char* json_text, fa_class** out) {
  if (fa_status s = require(json_text && out, "fa_class_parse: null argument")) {
    return s;
  }
  return guarded([&] { *out = new fa_class{load_class_json(json_text)}; });
}

fa_status fa_class_generate(const char* generator_json, fa_class** out) {
  if (fa_status s =
          require(generator_json && out, "fa_class_generate: null argument")) {
    return s;
  }
  return guarded([&] {
    GeneratorSpec spec = generator_from_json(generator_json);
    ExperimentConfig cfg;
    cfg.generator = spec;
    *out = new fa_class{materialize_class(cfg)};
  });
}

void fa_class_free(fa_class* cls) { delete cls; }

fa_status fa_class_info(const fa_class* cls, size_t* num_hypotheses,
                        size_t* domain_size, double* pi1) {
  if (fa_status s = require(cls != nullptr, "fa_class_info: null class")) return s;
  if (num_hypotheses) *num_hypotheses = cls->cls.size();
  if (domain_size) *domain_size = cls->cls.domain_size();
  if (pi1) *pi1 = cls->cls.domain().pi1();
  return FA_OK;
}

fa_status fa_class_save(const fa_class* cls, const char* path) {
  if (fa_status s = require(cls && path, "fa_class_save: null argument")) return s;
  return guarded([&] { save_class_file(cls->cls, path); });
}

fa_status fa_class_hypothesis(const fa_class* cls, size_t index,
                              int8_t* labels) {
  if (fa_status s =
          require(cls && labels, "fa_class_hypothesis: null argument")) {
    return s;
  }
  if (fa_status s = require(index < cls->cls.size(),
                            "fa_class_hypothesis: index out of range")) {
    return s;
  }
  const auto& h = cls->cls.hypothesis(index).labels;
  std::memcpy(labels, h.data(), h.size() * sizeof(int8_t));
  return FA_OK;
}

fa_status fa_class_mu(const fa_class* cls, size_t index, double* mu_out) {
  if (fa_status s = require(cls && mu_out, "fa_class_mu: null argument")) return s;
  if (fa_status s =
          require(index < cls->cls.size(), "fa_class_mu: index out of range")) {
    return s;
  }
  *mu_out = cls->cls.mu_of(index);
  return FA_OK;
}

fa_status fa_audit(const fa_class* cls, const char* method, size_t target,
                   double eps, double delta, long budget, uint64_t seed,
                   const char* cal_mode, char** result_json) {
  if (fa_status s = require(cls && method && result_json,
                            "fa_audit: null argument")) {
    return s;
  }
  if (fa_status s =
          require(target < cls->cls.size(), "fa_audit: target out of range")) {
    return s;
  }
  return guarded([&] {
    std::optional<long> b;
    if (budget >= 0) b = budget;
    std::string mode = cal_mode ? cal_mode : "checked";
    std::string method_s = method;
    AuditResult r;
    const char* cache_dir = std::getenv("FAIRAUDIT_CACHE_DIR");
    if (method_s == "minimax" && cache_dir && *cache_dir) {
      CostTable table(cls->cls, eps);
      std::string cache = cost_cache_path(cls->cls, eps, cache_dir);
      table.load(cache);
      auto oracle = make_counting_oracle(cls->cls.hypothesis(target));
      r = minimax_audit(oracle, cls->cls, eps, table, b);
      table.save(cache);
    } else {
      r = run_method(method_s, cls->cls, target, eps, delta, b, seed, mode);
    }
    double true_mu = cls->cls.mu_of(target);
    json j = audit_result_json(cls->cls, r, method_s, eps, delta, budget, seed,
                               &true_mu);
    *result_json = dup_string(j.dump());
  });
}

fa_status fa_audit_remote(const fa_class* cls, const char* method,
                          const char* url, double eps, double delta,
                          long budget, uint64_t seed, const char* cal_mode,
                          char** result_json) {
  if (fa_status s = require(cls && method && url && result_json,
                            "fa_audit_remote: null argument")) {
    return s;
  }
  return guarded([&] {
    RemoteOracle remote(url);
    auto meta = remote.meta();
    if (meta.kind != "finite" || meta.m != cls->cls.domain_size()) {
      throw FaError(ErrorCode::kInvalidInput,
                    "fa_audit_remote: server model does not match the class "
                    "domain");
    }
    CountingOracle oracle(
        [&remote](std::size_t id) { return remote.query_id(id); });
    std::optional<long> b;
    if (budget >= 0) b = budget;
    std::string mode = cal_mode ? cal_mode : "checked";
    std::string method_s = method;

    AuditResult r;
    if (method_s == "iid") {
      r = iid_audit(oracle, cls->cls.domain(), eps, delta, seed, b);
    } else if (method_s == "cal") {
      r = phased_cal_audit(oracle, cls->cls, eps, seed,
                           mode == "sampled" ? CalMode::kSampled
                                             : CalMode::kChecked,
                           b);
    } else if (method_s == "oracle") {
      r = oracle_audit(oracle, cls->cls, eps, delta, seed, b);
    } else if (method_s == "minimax") {
      CostTable table(cls->cls, eps);
      r = minimax_audit(oracle, cls->cls, eps, table, b);
    } else {
      throw FaError(ErrorCode::kInvalidInput,
                    "fa_audit_remote: unknown method '" + method_s + "'");
    }
    json j = audit_result_json(cls->cls, r, method_s, eps, delta, budget, seed,
                               nullptr);
    j["remote"] = url;
    *result_json = dup_string(j.dump());
  });
}

fa_status fa_cost(const fa_class* cls, double eps, const char* cache_dir,
                  int* cost_out) {
  if (fa_status s = require(cls && cost_out, "fa_cost: null argument")) return s;
  return guarded([&] {
    CostTable table(cls->cls, eps);
    std::string cache;
    if (cache_dir && *cache_dir) {
      cache = cost_cache_path(cls->cls, eps, cache_dir);
      table.load(cache);
    }
    *cost_out = cost(VersionSpace::full(cls->cls), eps, cls->cls, table);
    if (!cache.empty()) table.save(cache);
  });
}

fa_status fa_xtd(const fa_class* cls, double eps, int* xtd_out) {
  if (fa_status s = require(cls && xtd_out, "fa_xtd: null argument")) return s;
  return guarded([&] { *xtd_out = xtd(cls->cls, eps); });
}

fa_status fa_specifying_set(const fa_class* cls, double eps,
                            const int8_t* reference, const char* mode,
                            double delta, uint64_t seed, char** result_json) {
  if (fa_status s = require(cls && reference && mode && result_json,
                            "fa_specifying_set: null argument")) {
    return s;
  }
  return guarded([&] {
    std::vector<Label> ref(reference, reference + cls->cls.domain_size());
    std::string mode_s = mode;
    json j;
    j["mode"] = mode_s;
    if (mode_s == "exact" || mode_s == "greedy") {
      auto set = min_specifying_set(
          ref, cls->cls, eps,
          mode_s == "exact" ? SpecSetMode::kExact : SpecSetMode::kGreedy);
      j["set"] = set;
      j["size"] = set.size();
    } else if (mode_s == "online") {
      std::size_t k = cls->cls.size();
      int mb = std::max(1, static_cast<int>(std::ceil(
                               std::log2(static_cast<double>(k)))));
      double d = delta > 0.0 && delta < 1.0 ? delta : 0.05;
      double rate = std::log(static_cast<double>(k) * static_cast<double>(k) *
                             mb / d);
      Rng rng(seed);
      SetCoverState state(cls->cls.domain_size(), rate, rng);
      auto out = online_specifying_set(ref, cls->cls, eps, state);
      j["set"] = out.set;
      j["size"] = out.set.size();
      j["gap"] = out.gap;
      j["doublings"] = state.doublings();
      j["forced_adds"] = state.forced_adds();
    } else {
      throw FaError(ErrorCode::kInvalidInput,
                    "fa_specifying_set: unknown mode '" + mode_s + "'");
    }
    *result_json = dup_string(j.dump());
  });
}

fa_status fa_mp_diameter(const fa_class* cls, const int* ids,
                         const int8_t* labels, size_t n, double* out) {
  if (fa_status s = require(cls && out && (n == 0 || (ids && labels)),
                            "fa_mp_diameter: null argument")) {
    return s;
  }
  return guarded([&] {
    Transcript t;
    for (size_t i = 0; i < n; ++i) {
      t.add(ids[i], static_cast<Label>(labels[i]));
    }
    *out = mp_diameter(cls->cls, t);
  });
}

fa_status fa_gaussian_trials(size_t d, double eps, uint64_t seed, long n_random,
                             const double* a, double b, char** csv_out) {
  if (fa_status s = require(csv_out && d > 0, "fa_gaussian_trials: bad args")) {
    return s;
  }
  if (fa_status s = require(n_random > 0 || a != nullptr,
                            "fa_gaussian_trials: need a model or n_random")) {
    return s;
  }
  return guarded([&] {
    std::string csv = "d,eps,seed,gamma_true,gamma_hat,abs_err,queries,branch\n";
    Rng rng(seed);
    long trials = n_random > 0 ? n_random : 1;
    for (long t = 0; t < trials; ++t) {
      LinearModel model;
      if (n_random > 0) {
        model.a.resize(d);
        double norm = 0.0;
        do {
          norm = 0.0;
          for (auto& v : model.a) {
            v = rng.normal();
            norm += v * v;
          }
        } while (norm == 0.0);
        model.b = rng.normal();
      } else {
        model.a.assign(a, a + d);
        model.b = b;
      }
      double gamma_true = model.gamma();
      auto oracle = make_linear_oracle(model);
      GammaEstimate est = estimate_positive(oracle, d, eps);
      char line[256];
      std::snprintf(line, sizeof(line), "%zu,%.12g,%llu,%.12g,%.12g,%.12g,%ld,%s\n",
                    d, eps, static_cast<unsigned long long>(seed), gamma_true,
                    est.gamma_hat, std::fabs(est.gamma_hat - gamma_true),
                    est.queries_used,
                    est.branch == GammaBranch::kEarlyReturn ? "early" : "full");
      csv += line;
    }
    *csv_out = dup_string(csv);
  });
}

fa_status fa_gaussian_two_group(size_t d, double eps, const double* a, double b,
                                const char* pops_json, int paper_sign,
                                char** result_json) {
  if (fa_status s = require(result_json && a && d > 0,
                            "fa_gaussian_two_group: bad args")) {
    return s;
  }
  return guarded([&] {
    GaussianPopulations pops;
    if (pops_json) {
      json p = json::parse(pops_json, nullptr, false);
      if (p.is_discarded() || !p.is_object()) {
        throw FaError(ErrorCode::kParseError, "populations: not valid JSON");
      }
      pops.m0 = p.at("m0").get<std::vector<double>>();
      pops.m1 = p.at("m1").get<std::vector<double>>();
      pops.s0 = p.at("s0").get<std::vector<std::vector<double>>>();
      pops.s1 = p.at("s1").get<std::vector<std::vector<double>>>();
    } else {
      // Canonical shifted pair: group 1 centered at e1.
      pops.m0.assign(d, 0.0);
      pops.m1.assign(d, 0.0);
      pops.m1[0] = 1.0;
      pops.s0.assign(d, std::vector<double>(d, 0.0));
      for (size_t i = 0; i < d; ++i) pops.s0[i][i] = 1.0;
      pops.s1 = pops.s0;
    }
    LinearModel model;
    model.a.assign(a, a + d);
    model.b = b;

    auto oracle = make_linear_oracle(model);
    GaussianAuditResult r = gaussian_audit(oracle, pops, eps, paper_sign != 0);

    double g0 = analytic_gamma(model, pops.m0, cholesky(pops.s0));
    double g1 = analytic_gamma(model, pops.m1, cholesky(pops.s1));
    double mu_true = paper_sign ? g0 - g1 : g1 - g0;

    json j;
    j["mu_hat"] = r.mu_hat;
    j["mu_true"] = mu_true;
    j["abs_error"] = std::fabs(r.mu_hat - mu_true);
    j["queries"] = r.queries;
    j["gamma0_hat"] = r.group0.gamma_hat;
    j["gamma1_hat"] = r.group1.gamma_hat;
    j["gamma0_true"] = g0;
    j["gamma1_true"] = g1;
    j["paper_sign"] = paper_sign != 0;
    *result_json = dup_string(j.dump());
  });
}

fa_status fa_experiment_run(const char* config_json, char** runs_csv,
                            char** summary_csv) {
  if (fa_status s = require(config_json && runs_csv && summary_csv,
                            "fa_experiment_run: null argument")) {
    return s;
  }
  return guarded([&] {
    ExperimentConfig cfg = ExperimentConfig::from_json(config_json);
    ExperimentTables tables = run_experiment(cfg);
    *runs_csv = dup_string(tables.runs_csv);
    *summary_csv = dup_string(tables.summary_csv);
  });
}

fa_status fa_serve(const fa_class* cls, size_t target, const char* host,
                   int port) {
  if (fa_status s = require(cls != nullptr, "fa_serve: null class")) return s;
  if (fa_status s =
          require(target < cls->cls.size(), "fa_serve: target out of range")) {
    return s;
  }
  return guarded([&] {
    ModelServer server(cls->cls.hypothesis(target));
    server.run(host && *host ? host : "0.0.0.0", port);
  });
}

}  // extern "C"
