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

#ifndef FAIRAUDIT_BASELINES_HPP_
#define FAIRAUDIT_BASELINES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "fairaudit/audit_result.hpp"
#include "fairaudit/oracle.hpp"
#include "fairaudit/version_space.hpp"

namespace fairaudit {

/// Per-group sample size of the i.i.d. baseline: two-sided Hoeffding at
/// eps/2 and delta/2 per group.
long iid_sample_size(double eps, double delta);

/// The i.i.d. sampling baseline: draw from each group's conditional,
/// query, and return the difference of empirical positive rates. Repeated
/// draws of one example consume a single query.
AuditResult iid_audit(CountingOracle& oracle, const Domain& domain, double eps,
                      double delta, std::uint64_t seed,
                      std::optional<long> budget = std::nullopt);

enum class CalMode { kSampled, kChecked };

/// Both sample conditions of the derandomized Phased CAL round: the
/// empirical disagreement rate is within the Bernstein envelope, and zero
/// empirical disagreement between two hypotheses certifies a small true
/// disagreement. The pairwise condition ranges over the whole class.
bool feasibility_check(const std::vector<std::size_t>& sample,
                       const VersionSpace& v, const HypothesisClass& cls,
                       std::size_t sample_size);

/// Phased CAL for auditing: geometric sampling phases, querying only inside
/// the disagreement region. Checked mode resamples each phase until the
/// feasibility conditions hold (cap `max_resamples`, then
/// feasibility-timeout), which turns the high-probability guarantee into a
/// deterministic one.
AuditResult phased_cal_audit(CountingOracle& oracle, const HypothesisClass& cls,
                             double eps, std::uint64_t seed, CalMode mode,
                             std::optional<long> budget = std::nullopt,
                             int max_resamples = 1000);

}  // namespace fairaudit

#endif  // FAIRAUDIT_BASELINES_HPP_
