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

#ifndef FAIRAUDIT_ORACLE_AUDITOR_HPP_
#define FAIRAUDIT_ORACLE_AUDITOR_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "fairaudit/audit_result.hpp"
#include "fairaudit/oracle.hpp"
#include "fairaudit/rng.hpp"
#include "fairaudit/version_space.hpp"

namespace fairaudit {

/// Majority vote of the consistent set, per example, ties to +1. The vote
/// may fall outside the class; the specifying-set machinery allows that.
std::vector<Label> halving_predict(const VersionSpace& consistent,
                                   const HypothesisClass& cls);

struct WeightedExample {
  std::size_t id = 0;
  Label y = +1;
  double weight = 1.0;
};

/// Constrained ERM: among hypotheses with zero error on `b`, the one with
/// the smallest weighted error on `a`; ties by smallest index.
std::size_t c_erm(const std::vector<WeightedExample>& a,
                  const std::vector<std::pair<std::size_t, Label>>& b,
                  const HypothesisClass& cls);

enum class Direction { kMax, kMin };

/// Extremal demographic parity subject to agreeing with `reference` on `t`;
/// empty optional when no hypothesis qualifies.
std::optional<std::size_t> extremal_constrained(
    const HypothesisClass& cls, const std::vector<std::size_t>& t,
    const std::vector<Label>& reference, Direction direction);

/// Online set-cover state for one specifying-set construction: multiplicative
/// weights over examples against exponentially distributed thresholds.
class SetCoverState {
 public:
  /// Thresholds are drawn in example-id order from `rng` with survival
  /// function exp(-rate * t).
  SetCoverState(std::size_t domain_size, double rate, Rng& rng);

  double weight(std::size_t x) const { return weights_[x]; }
  double total_weight() const;
  const std::vector<double>& thresholds() const { return thresholds_; }
  const Bitset& selected() const { return selected_; }
  std::vector<std::size_t> selected_ids() const { return selected_.indices(); }

  /// Double the weight of every example in `delta` and fold any example
  /// whose weight reached its threshold into the selected set.
  void double_weights(const std::vector<std::size_t>& delta);

  /// Stall fallback: force one example into the selected set.
  void force_select(std::size_t x) {
    selected_.set(x);
    ++forced_adds_;
  }

  int doublings() const { return doublings_; }
  int forced_adds() const { return forced_adds_; }
  double max_weight_seen() const { return max_weight_seen_; }
  double max_total_weight_seen() const { return max_total_weight_seen_; }

 private:
  std::vector<double> weights_;
  std::vector<double> thresholds_;
  Bitset selected_;
  int doublings_ = 0;
  int forced_adds_ = 0;
  double max_weight_seen_ = 0.0;
  double max_total_weight_seen_ = 0.0;
};

struct SpecifyingSetResult {
  std::vector<std::size_t> set;  // sorted example ids
  // Extremal pair (argmax, argmin) at exit; absent when the constrained
  // programs became infeasible.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  double gap = 0.0;
};

/// Build a specifying set for `reference` by alternating constrained
/// extremal solves with threshold-based online set cover, until the
/// surviving mu range is within 2*eps or no hypothesis matches.
SpecifyingSetResult online_specifying_set(const std::vector<Label>& reference,
                                          const HypothesisClass& cls,
                                          double eps, SetCoverState& state);

/// The oracle-efficient randomized auditor: teach the halving learner's
/// prediction with online specifying sets, query them, and stop the first
/// time the prediction survives its own specifying set.
AuditResult oracle_audit(CountingOracle& oracle, const HypothesisClass& cls,
                         double eps, double delta, std::uint64_t seed,
                         std::optional<long> budget = std::nullopt);

}  // namespace fairaudit

#endif  // FAIRAUDIT_ORACLE_AUDITOR_HPP_
