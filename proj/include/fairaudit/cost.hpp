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

#ifndef FAIRAUDIT_COST_HPP_
#define FAIRAUDIT_COST_HPP_

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairaudit/audit_result.hpp"
#include "fairaudit/oracle.hpp"
#include "fairaudit/version_space.hpp"

namespace fairaudit {

/// Memo table for the minimax value function, scoped to one (class, eps)
/// pair. Entries are immutable once written; `best_query` is -1 while the
/// value is 0 (no query needed). Inserts are idempotent, so concurrent
/// audits over one class may share a table.
class CostTable {
 public:
  struct Entry {
    int cost = 0;
    int best_query = -1;
  };

  CostTable(const HypothesisClass& cls, double eps);

  const HypothesisClass& cls() const { return *cls_; }
  double eps() const { return eps_; }
  std::size_t size() const;

  std::optional<Entry> lookup(const Key128& key) const;
  void store(const Key128& key, Entry e);

  /// Persisted form: JSON keyed by the class content hash and eps; stale
  /// caches (different class or eps) are ignored on load.
  void save(const std::string& path) const;
  bool load(const std::string& path);

 private:
  const HypothesisClass* cls_;
  double eps_;
  std::uint64_t class_hash_;
  mutable std::mutex mutex_;
  std::unordered_map<Key128, Entry, Key128Hash> table_;
};

/// The minimax number of further queries needed to drive the version
/// space's mu-diameter to at most 2*eps against an adversarial consistent
/// labeler. Value 0 exactly when the diameter is already small enough.
int cost(const VersionSpace& v, double eps, const HypothesisClass& cls,
         CostTable& table);

/// A query attaining the min-max at `v`; smallest example id on ties.
/// Requires cost(v) >= 1.
std::size_t best_query(const VersionSpace& v, double eps,
                       const HypothesisClass& cls, CostTable& table);

/// The optimal deterministic auditor: query best_query and restrict until
/// the diameter closes, then return the midpoint of the surviving mu range.
/// With a budget, stops early and flags the result truncated.
AuditResult minimax_audit(CountingOracle& oracle, const HypothesisClass& cls,
                          double eps, CostTable& table,
                          std::optional<long> budget = std::nullopt);

/// Exact minimum depth over all example-based decision trees whose every
/// leaf has mu-diameter at most 2*eps. Computed by iterative-deepening
/// feasibility search, independently of the cost recursion; the two agree.
/// Returns nullopt when no tree of depth <= depth_cap exists.
std::optional<int> tree_depth_bruteforce(const VersionSpace& v, double eps,
                                         const HypothesisClass& cls,
                                         int depth_cap);

enum class SpecSetMode { kExact, kGreedy };

/// A set S of examples such that all hypotheses agreeing with `reference`
/// on S have mu values within 2*eps of each other. Exact mode enumerates
/// subsets by increasing size (domain capped at 20 examples); greedy mode
/// runs set-cover greedy over the uncovered-pair universe.
std::vector<std::size_t> min_specifying_set(const std::vector<Label>& reference,
                                            const HypothesisClass& cls,
                                            double eps, SpecSetMode mode);

/// Extended teaching dimension: the worst exact specifying-set size over
/// all 2^|X| labelings of the domain. Domain capped at 16 examples.
int xtd(const HypothesisClass& cls, double eps);

}  // namespace fairaudit

#endif  // FAIRAUDIT_COST_HPP_
