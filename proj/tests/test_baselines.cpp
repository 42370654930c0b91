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

#include <doctest.h>

#include <cmath>

#include "fairaudit/baselines.hpp"
#include "fairaudit/harness.hpp"
#include "fairaudit/rng.hpp"

using namespace fairaudit;

TEST_CASE("iid sample size pins the Hoeffding constant") {
  // ceil(2 ln(4/delta) / eps^2) at eps=0.25, delta=0.1.
  CHECK(iid_sample_size(0.25, 0.1) == 119);
  CHECK(iid_sample_size(0.1, 0.1) == 738);
}

TEST_CASE("iid audit: all-positive model gives exactly zero") {
  auto inst = gen_shattered(4);
  Hypothesis all_pos;
  all_pos.labels.assign(inst.cls.domain_size(), Label{+1});
  CountingOracle oracle(
      [all_pos](std::size_t id) { return all_pos.labels[id]; });
  auto r = iid_audit(oracle, inst.cls.domain(), 0.25, 0.1, 5);
  CHECK(r.estimate == 0.0);
  // Queries are deduplicated: at most one per distinct example.
  CHECK(r.queries <= static_cast<long>(inst.cls.domain_size()));
}

TEST_CASE("iid audit failure rate stays near the Hoeffding budget") {
  auto inst = gen_shattered(4);
  const auto& cls = inst.cls;
  double eps = 0.25, delta = 0.1;
  // A target with mu = 0.5: two of four group-1 points positive.
  Hypothesis target{{-1, +1, +1, -1, -1}};
  double true_mu = mu(target, cls.domain());
  CHECK(true_mu == doctest::Approx(0.5));

  int failures = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    CountingOracle oracle(
        [&target](std::size_t id) { return target.labels[id]; });
    auto r = iid_audit(oracle, cls.domain(), eps, delta,
                       Rng::derive(2024, static_cast<std::uint64_t>(t)));
    if (std::fabs(r.estimate - true_mu) > eps) ++failures;
  }
  // Expected failure rate is at most delta; allow binomial slack.
  CHECK(failures <= static_cast<int>(trials * (delta + 0.03)));
}

TEST_CASE("iid audit respects a budget and flags truncation") {
  auto inst = gen_shattered(8);
  auto oracle = make_counting_oracle(inst.cls.hypothesis(inst.target));
  auto r = iid_audit(oracle, inst.cls.domain(), 0.05, 0.1, 3, /*budget=*/4);
  CHECK(r.truncated);
  CHECK(r.queries <= 4);
}

TEST_CASE("feasibility check evaluates both displayed conditions") {
  auto inst = gen_shattered(3);
  const auto& cls = inst.cls;

  // A singleton version space has an empty disagreement region, so the
  // first condition holds for any sample; with m_n large enough the pair
  // condition is what matters.
  auto v1 = VersionSpace::of(cls.size(), {0});
  std::vector<std::size_t> sample{0, 0, 0, 0};
  // Pairs of hypotheses disagreeing with large mass and no sampled witness:
  // with |H| = 8, bound = 16 ln 8 / 4 > 1, so condition 2 holds trivially.
  CHECK(feasibility_check(sample, v1, cls, 4));

  // Small-sample case engineered to fail condition 1: the full version
  // space has DIS = {1,2,3} with mass 1/2; a sample living entirely inside
  // DIS has empirical rate 1 > 2 * 1/2 + ln(8)/m once m is large enough
  // ... which cannot happen here since 2*0.5 = 1. Use a subclass whose DIS
  // mass is small instead.
  auto v2 = VersionSpace::of(cls.size(), {0, 1});  // differ on example 1 only
  double dis_mass = cls.domain().marginal(1);
  CHECK(dis_mass == doctest::Approx(1.0 / 6.0));
  std::vector<std::size_t> inside(64, 1);  // every draw hits DIS
  CHECK_FALSE(feasibility_check(inside, v2, cls, 64));

  size_t m_n = 64;
  std::vector<std::size_t> outside(m_n, 0);  // no draw hits DIS
  // Condition 1 holds; condition 2: pairs with mass > 16 ln 8 / 64 = 0.52
  // need a sampled witness. The max pairwise disagreement mass here is at
  // most 1/2 + 1/2 = 1... the all-negative vs all-positive-on-free pair has
  // mass 1/2 < 0.52, so the check passes.
  CHECK(feasibility_check(outside, v2, cls, m_n));
}

TEST_CASE("random samples pass the feasibility check at least half the time") {
  Rng seeds(88);
  int pass = 0, total = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto cls = gen_random_class(6, 12, seeds.next());
    auto v = VersionSpace::full(cls);
    // Cumulative marginal sampler, inline.
    std::vector<double> cum;
    double acc = 0.0;
    for (std::size_t x = 0; x < cls.domain_size(); ++x) {
      acc += cls.domain().marginal(x);
      cum.push_back(acc);
    }
    Rng rng(seeds.next());
    for (int rep = 0; rep < 10; ++rep) {
      std::size_t m_n = 16;
      std::vector<std::size_t> sample(m_n);
      for (auto& id : sample) id = sample_cumulative(cum, rng);
      if (feasibility_check(sample, v, cls, m_n)) ++pass;
      ++total;
    }
  }
  CHECK(pass * 2 >= total);
}

TEST_CASE("phased CAL: checked mode is correct for every target") {
  Rng seeds(777);
  for (int trial = 0; trial < 8; ++trial) {
    auto cls = gen_random_class(5 + static_cast<int>(seeds.below(3)),
                                4 + static_cast<int>(seeds.below(12)),
                                seeds.next());
    double eps = 0.2;
    double p_eps = cls.domain().minority_mass() * eps;
    for (std::size_t target = 0; target < cls.size(); ++target) {
      auto oracle = make_counting_oracle(cls.hypothesis(target));
      auto r = phased_cal_audit(oracle, cls, eps, seeds.next(),
                                CalMode::kChecked);
      CHECK(std::fabs(r.estimate - cls.mu_of(target)) <= eps + 1e-12);
      CHECK(r.final_version_space.contains(target));
      // Every survivor sits within disagreement p_floor * eps of the truth.
      r.final_version_space.for_each([&](std::size_t h) {
        CHECK(disagreement_mass(cls.hypothesis(h), cls.hypothesis(target),
                                cls.domain()) <= p_eps + 1e-9);
      });
      // Version spaces shrink monotonically round over round.
      std::size_t prev = cls.size();
      for (const auto& round : r.cal_rounds) {
        CHECK(round.version_space_size <= prev);
        prev = round.version_space_size;
      }
    }
  }
}

TEST_CASE("phased CAL: query totals against the disagreement-coefficient bound") {
  // Informative: total queries reported against theta * ln|H| * ln(1/eps),
  // with theta computed exactly by enumeration.
  auto cls = gen_random_class(8, 16, 4242);
  double eps = 0.15;
  double theta = disagreement_coefficient(cls, eps);
  double scale =
      theta * std::log(static_cast<double>(cls.size())) * std::log(1.0 / eps);
  long total = 0;
  int runs = 0;
  for (std::size_t target = 0; target < cls.size(); ++target) {
    auto oracle = make_counting_oracle(cls.hypothesis(target));
    auto r = phased_cal_audit(oracle, cls, eps, 9000 + target, CalMode::kChecked);
    total += r.queries;
    ++runs;
  }
  double avg = static_cast<double>(total) / runs;
  MESSAGE("CAL avg queries ", avg, " vs theta*ln|H|*ln(1/eps) = ", scale,
          " (theta = ", theta, ")");
  CHECK(avg >= 0.0);  // reported, not gated: the bound carries no constant
}

TEST_CASE("phased CAL: sampled mode also stays within eps here") {
  auto inst = gen_shattered(4);
  for (std::size_t target = 0; target < inst.cls.size(); ++target) {
    auto oracle = make_counting_oracle(inst.cls.hypothesis(target));
    auto r = phased_cal_audit(oracle, inst.cls, 0.25, 31 + target,
                              CalMode::kSampled);
    CHECK(std::fabs(r.estimate - inst.cls.mu_of(target)) <= 0.25 + 1e-12);
  }
}

TEST_CASE("phased CAL: singleton version space stops querying") {
  // Two hypotheses disagreeing everywhere on group 1: one query resolves
  // everything and later rounds have an empty disagreement region.
  auto inst = gen_shattered(3);
  std::vector<Hypothesis> two{inst.cls.hypothesis(0), inst.cls.hypothesis(7)};
  HypothesisClass cls(inst.cls.domain(), two);
  auto oracle = make_counting_oracle(cls.hypothesis(0));
  auto r = phased_cal_audit(oracle, cls, 0.1, 11, CalMode::kChecked);
  CHECK(r.queries <= 3);
  CHECK(r.estimate == doctest::Approx(cls.mu_of(0)));
  bool resolved_before_round = false;
  bool singleton_seen = false;
  for (const auto& round : r.cal_rounds) {
    if (resolved_before_round) {
      // once resolved, the disagreement region is empty: nothing to query
      CHECK(round.queried.empty());
    }
    if (round.version_space_size == 1) {
      singleton_seen = true;
      resolved_before_round = true;
    }
  }
  CHECK(singleton_seen);
}

TEST_CASE("phased CAL respects a budget") {
  auto inst = gen_shattered(8);
  auto oracle = make_counting_oracle(inst.cls.hypothesis(inst.target));
  auto r = phased_cal_audit(oracle, inst.cls, 0.05, 3, CalMode::kSampled,
                            /*budget=*/3);
  CHECK(r.truncated);
  CHECK(r.queries <= 3);
}
