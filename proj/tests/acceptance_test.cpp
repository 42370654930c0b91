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

// End-to-end acceptance suite. Each criterion runs at its stated tolerance
// and prints exactly one PASS/FAIL line; the exit code is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/baselines.hpp"
#include "fairaudit/cost.hpp"
#include "fairaudit/experiment.hpp"
#include "fairaudit/gaussian.hpp"
#include "fairaudit/harness.hpp"
#include "fairaudit/oracle_auditor.hpp"
#include "fairaudit/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fairaudit;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail, double seconds) {
  std::printf("%s criterion %2d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL",
              criterion, what.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

double median_of(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

// The shared random-instance suite of criteria 1, 4 and 5.
struct Instance {
  HypothesisClass cls;
  double eps;
};

std::vector<Instance> random_suite() {
  std::vector<Instance> out;
  for (int i = 0; i < 100; ++i) {
    int m = 5 + i % 6;                         // |X| in [5, 10]
    int k = 4 + (i * 7) % 29;                  // |H| in [4, 32]
    double eps = i % 2 == 0 ? 0.1 : 0.25;
    out.push_back({gen_random_class(m, k, 1000 + i), eps});
  }
  return out;
}

// Exact minimum specifying-set size, memoized per reference labeling.
struct TExactCache {
  const HypothesisClass* cls;
  double eps;
  std::map<std::vector<Label>, int> memo;

  int get(const std::vector<Label>& reference) {
    auto it = memo.find(reference);
    if (it != memo.end()) return it->second;
    int t = static_cast<int>(
        min_specifying_set(reference, *cls, eps, SpecSetMode::kExact).size());
    memo.emplace(reference, t);
    return t;
  }
};

void criterion_1() {
  Timer timer;
  long runs = 0, violations = 0;
  auto check_class = [&](const HypothesisClass& cls, double eps) {
    CostTable table(cls, eps);
    int budget = cost(VersionSpace::full(cls), eps, cls, table);
    for (std::size_t target = 0; target < cls.size(); ++target) {
      auto oracle = make_counting_oracle(cls.hypothesis(target));
      AuditResult r = minimax_audit(oracle, cls, eps, table);
      ++runs;
      if (std::fabs(r.estimate - cls.mu_of(target)) > eps + 1e-12) ++violations;
      if (r.queries > budget) ++violations;
    }
  };
  for (const Instance& inst : random_suite()) check_class(inst.cls, inst.eps);
  for (int n : {2, 4, 6, 8}) {
    auto shattered = gen_shattered(n);
    check_class(shattered.cls, 0.25);
    check_class(shattered.cls, 0.1);
  }
  report(1, violations == 0 && timer.seconds() < 60.0,
         "minimax correctness and optimality",
         std::to_string(runs) + " audits, " + std::to_string(violations) +
             " violations",
         timer.seconds());
}

void criterion_2() {
  Timer timer;
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    int m = 4 + i % 5;                        // |X| in [4, 8]
    int k = 4 + (i * 5) % 13;                 // |H| in [4, 16]
    double eps = i % 2 == 0 ? 0.1 : 0.3;
    auto cls = gen_random_class(m, k, 2000 + i);
    CostTable table(cls, eps);
    int c = cost(VersionSpace::full(cls), eps, cls, table);
    auto depth = tree_depth_bruteforce(VersionSpace::full(cls), eps, cls,
                                       static_cast<int>(cls.domain_size()));
    if (!depth || *depth != c) ++mismatches;
  }
  report(2, mismatches == 0 && timer.seconds() < 120.0,
         "cost equals exact separating-tree depth",
         "100 instances, " + std::to_string(mismatches) + " mismatches",
         timer.seconds());
}

void criterion_3() {
  Timer timer;
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    int m = 5 + i % 6;                        // |X| in [5, 10]
    int k = 4 + (i * 3) % 13;                 // |H| in [4, 16]
    double eps = i % 2 == 0 ? 0.15 : 0.25;
    auto cls = gen_random_class(m, k, 3000 + i);
    CostTable table(cls, eps);
    int c = cost(VersionSpace::full(cls), eps, cls, table);
    if (xtd(cls, eps) > c) ++violations;
  }
  report(3, violations == 0 && timer.seconds() < 300.0,
         "extended teaching dimension bounded by cost",
         "50 instances, " + std::to_string(violations) + " violations",
         timer.seconds());
}

// Criteria 4 and 5 share the oracle-audit runs over the suite.
void criteria_4_and_5() {
  Timer timer;
  long runs = 0;
  long err_violations = 0, mistake_violations = 0, spec_violations = 0;
  long weight_violations = 0, doubling_violations = 0, total_w_violations = 0;
  std::vector<double> ratios;
  std::vector<double> constants;

  auto check_class = [&](const HypothesisClass& cls, double eps) {
    const double delta = 0.05;
    CostTable table(cls, eps);
    int cost_h = cost(VersionSpace::full(cls), eps, cls, table);
    int mb = std::max(1, static_cast<int>(std::ceil(
                             std::log2(static_cast<double>(cls.size())))));
    double denom = std::max(1.0, static_cast<double>(cost_h)) * mb *
                   std::log(static_cast<double>(cls.size()) * mb / delta) *
                   std::log(static_cast<double>(cls.domain_size()));
    TExactCache t_cache{&cls, eps, {}};
    double log_two_x = std::log2(2.0 * static_cast<double>(cls.domain_size()));

    for (std::size_t target = 0; target < cls.size(); ++target) {
      for (int seed = 0; seed < 5; ++seed) {
        auto oracle = make_counting_oracle(cls.hypothesis(target));
        AuditResult r = oracle_audit(oracle, cls, eps, delta,
                                     Rng::derive(4000 + seed, target));
        ++runs;
        if (std::fabs(r.estimate - cls.mu_of(target)) > eps + 1e-12) {
          ++err_violations;
        }
        if (r.mistakes > mb) ++mistake_violations;
        constants.push_back(static_cast<double>(r.queries) / denom);
        for (const OracleRound& round : r.oracle_rounds) {
          if (!testing::is_specifying_set(round.queried, round.hhat, cls, eps)) {
            ++spec_violations;
          }
          if (round.max_weight > 2.0 + 1e-12) ++weight_violations;
          int t_exact = t_cache.get(round.hhat);
          double cap = t_exact * log_two_x;
          if (round.doublings > cap + 1e-9) ++doubling_violations;
          if (round.max_total_weight > 1.0 + cap + 1e-9) ++total_w_violations;
          if (t_exact > 0) {
            ratios.push_back(static_cast<double>(round.queried.size()) /
                             t_exact);
          }
        }
      }
    }
  };

  for (const Instance& inst : random_suite()) check_class(inst.cls, inst.eps);
  for (int n : {2, 4, 6, 8}) {
    auto shattered = gen_shattered(n);
    check_class(shattered.cls, 0.25);
  }

  double ratio_median = median_of(ratios);
  double c_median = median_of(constants);
  bool pass4 =
      err_violations == 0 && mistake_violations == 0 && spec_violations == 0;
  report(4, pass4, "oracle auditor correctness",
         std::to_string(runs) + " runs; err/mistake/spec violations " +
             std::to_string(err_violations) + "/" +
             std::to_string(mistake_violations) + "/" +
             std::to_string(spec_violations) + "; |T|/t median " +
             std::to_string(ratio_median) + " (informative <= 10); measured c median " +
             std::to_string(c_median),
         timer.seconds());
  bool pass5 = weight_violations == 0 && doubling_violations == 0 &&
               total_w_violations == 0;
  report(5, pass5, "set-cover weight invariants",
         "weight/doubling/total violations " + std::to_string(weight_violations) +
             "/" + std::to_string(doubling_violations) + "/" +
             std::to_string(total_w_violations),
         timer.seconds());
}

void criterion_6() {
  Timer timer;
  const double eps = 0.1, delta = 0.1;
  auto cls = gen_random_class(12, 64, 606060);
  const std::size_t target = 0;
  const double true_mu = cls.mu_of(target);
  int failures = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    auto oracle = make_counting_oracle(cls.hypothesis(target));
    AuditResult r = iid_audit(oracle, cls.domain(), eps, delta,
                              Rng::derive(660000, static_cast<std::uint64_t>(t)));
    if (std::fabs(r.estimate - true_mu) > eps) ++failures;
  }
  double rate = static_cast<double>(failures) / trials;
  report(6, rate <= delta + 0.02 && timer.seconds() < 30.0,
         "iid baseline Hoeffding failure rate",
         "failure rate " + std::to_string(rate) + " <= " +
             std::to_string(delta + 0.02),
         timer.seconds());
}

void criterion_7() {
  Timer timer;
  const double eps = 0.2;
  long runs = 0, err_violations = 0, ball_violations = 0;
  long rounds_total = 0, rounds_failed = 0;
  for (int i = 0; i < 8; ++i) {
    int m = 5 + i % 4;                        // |X| in [5, 8]
    int k = 6 + (i * 5) % 11;                 // |H| in [6, 16]
    auto cls = gen_random_class(m, k, 7000 + i);
    double p_eps = cls.domain().minority_mass() * eps;
    for (std::size_t target = 0; target < cls.size(); ++target) {
      auto oracle = make_counting_oracle(cls.hypothesis(target));
      try {
        AuditResult r = phased_cal_audit(oracle, cls, eps,
                                         Rng::derive(7100 + i, target),
                                         CalMode::kChecked);
        ++runs;
        rounds_total += static_cast<long>(r.cal_rounds.size());
        if (std::fabs(r.estimate - cls.mu_of(target)) > eps + 1e-12) {
          ++err_violations;
        }
        bool outside = false;
        r.final_version_space.for_each([&](std::size_t h) {
          if (disagreement_mass(cls.hypothesis(h), cls.hypothesis(target),
                                cls.domain()) > p_eps + 1e-9) {
            outside = true;
          }
        });
        if (outside) ++ball_violations;
      } catch (const FaError& e) {
        if (e.code() == ErrorCode::kFeasibilityTimeout) {
          ++rounds_total;
          ++rounds_failed;
        } else {
          throw;
        }
      }
    }
  }
  double resample_ok =
      1.0 - static_cast<double>(rounds_failed) / std::max<long>(1, rounds_total);
  report(7,
         err_violations == 0 && ball_violations == 0 && resample_ok >= 0.99,
         "phased CAL checked-mode guarantees",
         std::to_string(runs) + " runs; err/ball violations " +
             std::to_string(err_violations) + "/" +
             std::to_string(ball_violations) + "; feasible-round rate " +
             std::to_string(resample_ok),
         timer.seconds());
}

void criterion_8() {
  Timer timer;
  Rng rng(808080);
  long trials = 0, gamma_violations = 0, query_violations = 0,
       audit_violations = 0;
  for (std::size_t d : {1, 2, 5, 10}) {
    for (double eps : {0.05, 0.02}) {
      long bound = estimate_positive_query_bound(d, eps);
      for (int t = 0; t < 50; ++t) {
        LinearModel model;
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
        ++trials;

        auto oracle = make_linear_oracle(model);
        GammaEstimate est = estimate_positive(oracle, d, eps);
        if (std::fabs(est.gamma_hat - model.gamma()) > eps + 1e-12) {
          ++gamma_violations;
        }
        if (est.queries_used > bound) ++query_violations;

        // Random SPD populations for the two-group audit.
        auto rand_spd = [&](std::size_t n) {
          std::vector<std::vector<double>> a(n, std::vector<double>(n));
          for (auto& row : a) {
            for (auto& v : row) v = rng.normal() * 0.5;
          }
          std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              for (std::size_t l = 0; l < n; ++l) s[i][j] += a[l][i] * a[l][j];
            }
            s[i][i] += 0.05;
          }
          return s;
        };
        GaussianPopulations pops;
        pops.m0.resize(d);
        pops.m1.resize(d);
        for (auto& v : pops.m0) v = rng.normal() * 0.5;
        for (auto& v : pops.m1) v = rng.normal() * 0.5;
        pops.s0 = rand_spd(d);
        pops.s1 = rand_spd(d);
        double g0 = analytic_gamma(model, pops.m0, cholesky(pops.s0));
        double g1 = analytic_gamma(model, pops.m1, cholesky(pops.s1));
        auto oracle2 = make_linear_oracle(model);
        GaussianAuditResult audit = gaussian_audit(oracle2, pops, eps);
        if (std::fabs(audit.mu_hat - (g1 - g0)) > eps + 1e-12) {
          ++audit_violations;
        }
      }
    }
  }
  report(8,
         gamma_violations == 0 && query_violations == 0 &&
             audit_violations == 0 && timer.seconds() < 10.0,
         "gaussian auditor accuracy and query accounting",
         std::to_string(trials) + " trials; gamma/query/audit violations " +
             std::to_string(gamma_violations) + "/" +
             std::to_string(query_violations) + "/" +
             std::to_string(audit_violations),
         timer.seconds());
}

void criterion_9() {
  Timer timer;
  double worst_cdf = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double z = -8.0 + 16.0 * i / 9999.0;
    worst_cdf = std::max(worst_cdf,
                         std::fabs(normal_cdf(z) - testing::phi_quadrature(z)));
  }
  Rng rng(909090);
  double worst_slack = -1e9;
  for (int i = 0; i < 10000; ++i) {
    std::size_t n = 1 + rng.below(8);
    std::vector<double> u(n), v(n);
    double dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = (rng.uniform01() - 0.5) * 20.0;
      v[j] = u[j] + (rng.uniform01() - 0.5) * 4.0;
      dist = std::max(dist, std::fabs(u[j] - v[j]));
    }
    double lhs = std::fabs(crossing_radius(u) - crossing_radius(v));
    worst_slack = std::max(worst_slack, lhs - dist);
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "max |Phi - quadrature| %.2e; Lipschitz slack %.2e", worst_cdf,
                worst_slack);
  report(9, worst_cdf <= 1e-7 && worst_slack <= 1e-9, "numerical kernels",
         detail, timer.seconds());
}

void criterion_10() {
  Timer timer;
  auto inst = gen_shattered(8);
  const auto& cls = inst.cls;
  const double eps = 0.25;

  // An iid-style audit of four distinct group-1 queries.
  Rng rng(101010);
  Transcript iid_like;
  int distinct = 0;
  while (distinct < 4) {
    std::size_t id = 1 + rng.below(8);
    if (!iid_like.contains(static_cast<int>(id))) {
      iid_like.add(static_cast<int>(id), cls.label(inst.target, id));
      ++distinct;
    }
  }
  double iid_diam = mp_diameter(cls, iid_like);

  CostTable table(cls, eps);
  int c = cost(VersionSpace::full(cls), eps, cls, table);
  auto oracle = make_counting_oracle(cls.hypothesis(inst.target));
  AuditResult r = minimax_audit(oracle, cls, eps, table);
  double mm_diam = mp_diameter(cls, r.transcript);

  bool pass = iid_diam >= 0.5 && mm_diam <= 0.5 && r.queries == c;
  report(10, pass, "manipulation separation fixture",
         "iid diameter " + std::to_string(iid_diam) + " >= 0.5; minimax " +
             std::to_string(mm_diam) + " <= 0.5 with " +
             std::to_string(r.queries) + " = Cost(H) queries",
         timer.seconds());
}

void criterion_11() {
  Timer timer;
  bool ordering_ok = true;
  std::string detail;
  for (int which = 0; which < 2; ++which) {
    HypothesisClass cls = which == 0 ? testing::experiment_class_a()
                                     : testing::experiment_class_b();
    ExperimentConfig cfg;
    cfg.generator = GeneratorSpec{};  // class passed directly below
    cfg.target = 0;
    cfg.methods = {"iid", "cal", "oracle"};
    cfg.budgets = {20, 50, 80, 100, 120};
    cfg.repeats = 50;
    cfg.eps = 2.5e-4;
    cfg.delta = 0.1;
    cfg.seed = 20260808;
    ExperimentTables t = run_experiment(cfg, cls);

    std::map<std::pair<std::string, long>, std::vector<double>> diams;
    for (const ExperimentRow& row : t.rows) {
      if (!row.error.empty()) {
        ordering_ok = false;
        detail += " run error: " + row.error;
        continue;
      }
      diams[{row.method, row.budget}].push_back(row.diameter);
    }
    for (long b : cfg.budgets) {
      double oracle_med = median_of(diams[{"oracle", b}]);
      double cal_med = median_of(diams[{"cal", b}]);
      double iid_med = median_of(diams[{"iid", b}]);
      if (oracle_med > cal_med + 1e-12 || oracle_med > iid_med + 1e-12) {
        ordering_ok = false;
        detail += " class " + std::string(which == 0 ? "A" : "B") +
                  " budget " + std::to_string(b) + ": oracle " +
                  std::to_string(oracle_med) + " vs cal " +
                  std::to_string(cal_med) + " iid " + std::to_string(iid_med);
      }
    }
    if (which == 0) {
      ExperimentTables again = run_experiment(cfg, cls);
      if (again.runs_csv != t.runs_csv || again.summary_csv != t.summary_csv) {
        ordering_ok = false;
        detail += " rerun not byte-identical";
      }
    }
  }
  if (detail.empty()) {
    detail = "oracle median diameter <= cal and iid at every budget on both "
             "classes; rerun byte-identical";
  }
  report(11, ordering_ok, "experiment ordering and reproducibility", detail,
         timer.seconds());
}

}  // namespace

int main() {
  std::printf("fairaudit acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criteria_4_and_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
