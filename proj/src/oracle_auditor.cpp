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

#include "fairaudit/oracle_auditor.hpp"

#include <algorithm>
#include <cmath>

namespace fairaudit {

std::vector<Label> halving_predict(const VersionSpace& consistent,
                                   const HypothesisClass& cls) {
  if (consistent.empty()) {
    throw FaError(ErrorCode::kNonRealizableOracle,
                  "halving_predict: no consistent hypothesis remains");
  }
  const std::size_t m = cls.domain_size();
  std::vector<int> votes(m, 0);
  consistent.for_each([&](std::size_t h) {
    for (std::size_t x = 0; x < m; ++x) votes[x] += cls.label(h, x);
  });
  std::vector<Label> out(m);
  for (std::size_t x = 0; x < m; ++x) out[x] = votes[x] >= 0 ? +1 : -1;
  return out;
}

std::size_t c_erm(const std::vector<WeightedExample>& a,
                  const std::vector<std::pair<std::size_t, Label>>& b,
                  const HypothesisClass& cls) {
  bool found = false;
  std::size_t best = 0;
  double best_err = 0.0;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    bool consistent = true;
    for (const auto& [x, y] : b) {
      if (cls.label(h, x) != y) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    double err = 0.0;
    for (const WeightedExample& e : a) {
      if (cls.label(h, e.id) != e.y) err += e.weight;
    }
    if (!found || err < best_err) {
      found = true;
      best = h;
      best_err = err;
    }
  }
  if (!found) {
    throw FaError(ErrorCode::kInfeasible,
                  "c_erm: no hypothesis is consistent with the hard constraints");
  }
  return best;
}

std::optional<std::size_t> extremal_constrained(
    const HypothesisClass& cls, const std::vector<std::size_t>& t,
    const std::vector<Label>& reference, Direction direction) {
  std::optional<std::size_t> best;
  double best_mu = 0.0;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    bool consistent = true;
    for (std::size_t x : t) {
      if (cls.label(h, x) != reference[x]) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    double m = cls.mu_of(h);
    if (!best || (direction == Direction::kMax ? m > best_mu : m < best_mu)) {
      best = h;
      best_mu = m;
    }
  }
  return best;
}

SetCoverState::SetCoverState(std::size_t domain_size, double rate, Rng& rng)
    : weights_(domain_size, 1.0 / static_cast<double>(domain_size)),
      thresholds_(domain_size), selected_(domain_size) {
  for (std::size_t x = 0; x < domain_size; ++x) {
    thresholds_[x] = rng.exponential(rate);
  }
  max_weight_seen_ = weights_.empty() ? 0.0 : weights_[0];
  max_total_weight_seen_ = total_weight();
}

double SetCoverState::total_weight() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

void SetCoverState::double_weights(const std::vector<std::size_t>& delta) {
  for (std::size_t x : delta) {
    weights_[x] *= 2.0;
    max_weight_seen_ = std::max(max_weight_seen_, weights_[x]);
  }
  ++doublings_;
  max_total_weight_seen_ = std::max(max_total_weight_seen_, total_weight());
  // Selection is monotone: thresholds are fixed and weights only grow, so
  // folding in the newly-eligible examples preserves w >= tau for the rest.
  for (std::size_t x = 0; x < weights_.size(); ++x) {
    if (!selected_.test(x) && weights_[x] >= thresholds_[x]) selected_.set(x);
  }
}

SpecifyingSetResult online_specifying_set(const std::vector<Label>& reference,
                                          const HypothesisClass& cls,
                                          double eps, SetCoverState& state) {
  if (reference.size() != cls.domain_size()) {
    throw FaError(ErrorCode::kInvalidInput,
                  "online_specifying_set: reference length mismatch");
  }
  SpecifyingSetResult out;
  std::optional<std::pair<std::size_t, std::size_t>> last_pair;
  std::size_t last_selected = state.selected().count();

  while (true) {
    std::vector<std::size_t> t = state.selected_ids();
    auto h1 = extremal_constrained(cls, t, reference, Direction::kMax);
    auto h2 = extremal_constrained(cls, t, reference, Direction::kMin);
    if (!h1 || !h2) {
      // Nothing in the class matches the (improper) reference on T.
      out.set = std::move(t);
      out.pair = std::nullopt;
      out.gap = 0.0;
      return out;
    }
    double gap = cls.mu_of(*h1) - cls.mu_of(*h2);
    if (gap <= 2.0 * eps + kMuTolerance) {
      out.set = std::move(t);
      out.pair = std::make_pair(*h1, *h2);
      out.gap = gap;
      return out;
    }

    // The pair is uncovered: every x where h1 or h2 disagrees with the
    // reference could cover it.
    std::vector<std::size_t> delta;
    for (std::size_t x = 0; x < cls.domain_size(); ++x) {
      if (cls.label(*h1, x) != reference[x] || cls.label(*h2, x) != reference[x]) {
        delta.push_back(x);
      }
    }

    // Stall fallback: if the doubling loop below cannot run (delta already
    // too heavy) and no new example was selected since this same pair last
    // appeared, deterministically take the heaviest delta example.
    if (last_pair && *last_pair == std::make_pair(*h1, *h2) &&
        state.selected().count() == last_selected) {
      std::size_t pick = delta.front();
      double best_w = state.weight(pick);
      for (std::size_t x : delta) {
        if (state.weight(x) > best_w) {
          pick = x;
          best_w = state.weight(x);
        }
      }
      state.force_select(pick);
    }
    last_pair = std::make_pair(*h1, *h2);
    last_selected = state.selected().count();

    while (true) {
      double delta_weight = 0.0;
      for (std::size_t x : delta) delta_weight += state.weight(x);
      if (delta_weight > 1.0) break;
      state.double_weights(delta);
    }
  }
}

AuditResult oracle_audit(CountingOracle& oracle, const HypothesisClass& cls,
                         double eps, double delta, std::uint64_t seed,
                         std::optional<long> budget) {
  if (!(eps > 0.0)) {
    throw FaError(ErrorCode::kInvalidInput, "oracle_audit: eps must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw FaError(ErrorCode::kInvalidInput,
                  "oracle_audit: delta must lie in (0,1)");
  }

  AuditResult result;
  const long start_count = oracle.count();

  if (cls.size() == 1) {
    result.estimate = cls.mu_of(0);
    result.final_version_space = VersionSpace::full(cls);
    return result;
  }

  const int mistake_bound = static_cast<int>(
      std::ceil(std::log2(static_cast<double>(cls.size()))));
  const double rate = std::log(static_cast<double>(cls.size()) *
                               static_cast<double>(cls.size()) *
                               static_cast<double>(mistake_bound) / delta);
  Rng rng(seed);

  Transcript s;
  VersionSpace consistent = VersionSpace::full(cls);

  while (true) {
    std::vector<Label> hhat = halving_predict(consistent, cls);
    SetCoverState state(cls.domain_size(), rate, rng);
    SpecifyingSetResult spec = online_specifying_set(hhat, cls, eps, state);

    OracleRound round;
    round.hhat = hhat;
    round.queried = spec.set;
    round.doublings = state.doublings();
    round.forced_adds = state.forced_adds();
    round.max_weight = state.max_weight_seen();
    round.max_total_weight = state.max_total_weight_seen();
    round.gap = spec.gap;

    bool agreed = true;
    bool out_of_budget = false;
    for (std::size_t x : spec.set) {
      if (budget && !oracle.seen(x) &&
          oracle.count() - start_count >= *budget) {
        out_of_budget = true;
        break;
      }
      Label y = oracle.query(x);
      s.add(static_cast<int>(x), y);
      if (y != hhat[x]) agreed = false;
    }
    round.mistake = !agreed;
    result.oracle_rounds.push_back(std::move(round));

    consistent = version_space(cls, s);
    if (consistent.empty()) {
      throw FaError(ErrorCode::kNonRealizableOracle,
                    "oracle_audit: queried labels are inconsistent with every "
                    "hypothesis");
    }

    if (out_of_budget) {
      result.truncated = true;
      DiamResult d = diam_mu(consistent, cls);
      result.estimate = 0.5 * (cls.mu_of(d.argmax) + cls.mu_of(d.argmin));
      break;
    }
    if (agreed) {
      if (!spec.pair) {
        // The target itself matches hhat on T, so the programs were
        // feasible; reaching here means the oracle contradicted itself.
        throw FaError(ErrorCode::kNonRealizableOracle,
                      "oracle_audit: agreement with an unmatchable prediction");
      }
      result.estimate =
          0.5 * (cls.mu_of(spec.pair->first) + cls.mu_of(spec.pair->second));
      break;
    }
    ++result.mistakes;
  }

  result.queries = oracle.count() - start_count;
  result.transcript = s;
  result.final_version_space = consistent;
  return result;
}

}  // namespace fairaudit
