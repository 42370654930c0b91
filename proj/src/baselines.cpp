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

#include "fairaudit/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "fairaudit/rng.hpp"

namespace fairaudit {

namespace {

DiscreteSampler group_sampler(const Domain& domain, int group) {
  DiscreteSampler s;
  double acc = 0.0;
  for (const Example& e : domain.examples()) {
    if (e.group != group) continue;
    acc += group == 1 ? e.p1 : e.p0;
    s.cumulative.push_back(acc);
    s.ids.push_back(static_cast<std::size_t>(e.id));
  }
  return s;
}

DiscreteSampler marginal_sampler(const Domain& domain) {
  DiscreteSampler s;
  double acc = 0.0;
  for (const Example& e : domain.examples()) {
    acc += domain.marginal(static_cast<std::size_t>(e.id));
    s.cumulative.push_back(acc);
    s.ids.push_back(static_cast<std::size_t>(e.id));
  }
  return s;
}

}  // namespace

long iid_sample_size(double eps, double delta) {
  return static_cast<long>(std::ceil(2.0 * std::log(4.0 / delta) / (eps * eps)));
}

AuditResult iid_audit(CountingOracle& oracle, const Domain& domain, double eps,
                      double delta, std::uint64_t seed,
                      std::optional<long> budget) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw FaError(ErrorCode::kInvalidInput,
                  "iid_audit: eps and delta must lie in (0,1)");
  }
  const long n = iid_sample_size(eps, delta);
  Rng rng(seed);
  DiscreteSampler g1 = group_sampler(domain, 1);
  DiscreteSampler g0 = group_sampler(domain, 0);

  AuditResult result;
  const long start_count = oracle.count();
  long pos1 = 0, pos0 = 0;
  long drawn1 = 0, drawn0 = 0;

  // Interleave the two groups so budget truncation treats them evenly.
  for (long i = 0; i < n && !result.truncated; ++i) {
    for (int group = 1; group >= 0; --group) {
      std::size_t id = (group == 1 ? g1 : g0).draw(rng);
      if (budget && !oracle.seen(id) &&
          oracle.count() - start_count >= *budget) {
        result.truncated = true;
        break;
      }
      Label y = oracle.query(id);
      result.transcript.add(static_cast<int>(id), y);
      if (group == 1) {
        ++drawn1;
        if (y > 0) ++pos1;
      } else {
        ++drawn0;
        if (y > 0) ++pos0;
      }
    }
  }

  double rate1 = drawn1 > 0 ? static_cast<double>(pos1) / drawn1 : 0.0;
  double rate0 = drawn0 > 0 ? static_cast<double>(pos0) / drawn0 : 0.0;
  result.estimate = rate1 - rate0;
  result.queries = oracle.count() - start_count;
  return result;
}

namespace {

// Per-pair disagreement masks and masses, built once per audit so the
// checked-mode conditions stay cheap at large sample sizes.
struct PairCache {
  // For unordered pair (a < b): mask over example ids and true mass.
  std::vector<Bitset> masks;
  std::vector<double> masses;
  std::size_t class_size = 0;

  explicit PairCache(const HypothesisClass& cls) : class_size(cls.size()) {
    const std::size_t k = cls.size();
    const std::size_t m = cls.domain_size();
    masks.reserve(k * (k - 1) / 2);
    masses.reserve(k * (k - 1) / 2);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        Bitset mask(m);
        double mass = 0.0;
        for (std::size_t x = 0; x < m; ++x) {
          if (cls.label(a, x) != cls.label(b, x)) {
            mask.set(x);
            mass += cls.domain().marginal(x);
          }
        }
        masks.push_back(std::move(mask));
        masses.push_back(mass);
      }
    }
  }
};

bool feasible_with_cache(const std::vector<std::size_t>& sample,
                         const VersionSpace& v, const HypothesisClass& cls,
                         std::size_t sample_size, const PairCache& cache) {
  const double m_n = static_cast<double>(sample_size);

  // Condition 1: empirical disagreement-region rate within the envelope.
  Bitset dis = disagreement_mask(v, cls);
  double dis_mass = 0.0;
  for (std::size_t x : dis.indices()) dis_mass += cls.domain().marginal(x);
  std::size_t hits = 0;
  Bitset sampled(cls.domain_size());
  for (std::size_t id : sample) {
    if (dis.test(id)) ++hits;
    sampled.set(id);
  }
  if (static_cast<double>(hits) / m_n >
      2.0 * dis_mass + std::log(8.0) / m_n + 1e-12) {
    return false;
  }

  // Condition 2: a pair with zero sampled disagreement must have true
  // disagreement at most 16 ln|H| / m_n. Ranges over the whole class.
  const double bound =
      16.0 * std::log(static_cast<double>(cls.size())) / m_n + 1e-12;
  for (std::size_t p = 0; p < cache.masks.size(); ++p) {
    if (cache.masses[p] <= bound) continue;
    if (!cache.masks[p].intersects(sampled)) return false;
  }
  return true;
}

}  // namespace

bool feasibility_check(const std::vector<std::size_t>& sample,
                       const VersionSpace& v, const HypothesisClass& cls,
                       std::size_t sample_size) {
  if (sample.size() != sample_size) {
    throw FaError(ErrorCode::kInvalidInput,
                  "feasibility_check: sample size mismatch");
  }
  PairCache cache(cls);
  return feasible_with_cache(sample, v, cls, sample_size, cache);
}

AuditResult phased_cal_audit(CountingOracle& oracle, const HypothesisClass& cls,
                             double eps, std::uint64_t seed, CalMode mode,
                             std::optional<long> budget, int max_resamples) {
  if (!(eps > 0.0)) {
    throw FaError(ErrorCode::kInvalidInput, "phased_cal_audit: eps must be positive");
  }
  AuditResult result;
  const long start_count = oracle.count();

  if (cls.size() == 1) {
    result.estimate = cls.mu_of(0);
    result.final_version_space = VersionSpace::full(cls);
    return result;
  }

  const double p_floor = cls.domain().minority_mass();
  const double log_h = std::log(static_cast<double>(cls.size()));
  const int rounds = static_cast<int>(
      std::ceil(std::log2(16.0 * log_h / (p_floor * eps))));

  Rng rng(seed);
  DiscreteSampler marginal = marginal_sampler(cls.domain());
  std::optional<PairCache> cache;
  if (mode == CalMode::kChecked) cache.emplace(cls);

  VersionSpace v = VersionSpace::full(cls);
  for (int n = 1; n <= rounds && !result.truncated; ++n) {
    const std::size_t m_n = std::size_t{1} << n;
    std::vector<std::size_t> sample(m_n);
    int resamples = 0;
    while (true) {
      for (auto& id : sample) id = marginal.draw(rng);
      if (mode == CalMode::kSampled ||
          feasible_with_cache(sample, v, cls, m_n, *cache)) {
        break;
      }
      if (++resamples >= max_resamples) {
        throw FaError(ErrorCode::kFeasibilityTimeout,
                      "phased_cal_audit: no feasible sample after " +
                          std::to_string(max_resamples) + " attempts in phase " +
                          std::to_string(n));
      }
    }

    Bitset dis = disagreement_mask(v, cls);
    CalRound round;
    round.n = n;
    round.sample_size = m_n;
    round.resamples = resamples;
    std::vector<std::size_t> to_query;
    for (std::size_t id : sample) {
      if (dis.test(id)) {
        ++round.dis_sampled;
        to_query.push_back(id);
      }
    }
    std::sort(to_query.begin(), to_query.end());
    to_query.erase(std::unique(to_query.begin(), to_query.end()),
                   to_query.end());

    for (std::size_t id : to_query) {
      if (budget && !oracle.seen(id) &&
          oracle.count() - start_count >= *budget) {
        result.truncated = true;
        break;
      }
      Label y = oracle.query(id);
      result.transcript.add(static_cast<int>(id), y);
      round.queried.push_back(id);
      VersionSpace next = restrict(v, id, y, cls);
      if (next.empty()) {
        throw FaError(ErrorCode::kNonRealizableOracle,
                      "phased_cal_audit: oracle answer at example " +
                          std::to_string(id) +
                          " is inconsistent with every hypothesis");
      }
      v = next;
    }
    round.version_space_size = v.count();
    result.cal_rounds.push_back(std::move(round));
  }

  // Any surviving hypothesis works; take the smallest index for
  // reproducibility. Truncated runs report the midpoint instead.
  if (result.truncated) {
    DiamResult d = diam_mu(v, cls);
    result.estimate = 0.5 * (cls.mu_of(d.argmax) + cls.mu_of(d.argmin));
  } else {
    result.estimate = cls.mu_of(v.members().first());
  }
  result.queries = oracle.count() - start_count;
  result.final_version_space = v;
  return result;
}

}  // namespace fairaudit
