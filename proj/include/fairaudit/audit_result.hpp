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

#ifndef FAIRAUDIT_AUDIT_RESULT_HPP_
#define FAIRAUDIT_AUDIT_RESULT_HPP_

#include <cstddef>
#include <vector>

#include "fairaudit/domain.hpp"
#include "fairaudit/version_space.hpp"

namespace fairaudit {

/// One outer round of the oracle-efficient auditor; enough detail to replay
/// the set-cover invariants offline.
struct OracleRound {
  std::vector<Label> hhat;          // the (possibly improper) predictor taught
  std::vector<std::size_t> queried; // T, this round's specifying set
  int doublings = 0;                // weight-doubling steps executed
  int forced_adds = 0;              // stall-fallback additions to T
  double max_weight = 0.0;          // largest single w(x) observed
  double max_total_weight = 0.0;    // largest sum of weights observed
  bool mistake = false;             // did hhat err on some queried example
  double gap = 0.0;                 // mu(h1) - mu(h2) at loop exit
};

/// One phase of the CAL baseline.
struct CalRound {
  int n = 0;                         // round index, sample size is 2^n
  std::size_t sample_size = 0;       // m_n
  std::size_t dis_sampled = 0;       // |S_n ∩ DIS(V_n)| as a multiset
  std::vector<std::size_t> queried;  // distinct ids queried this round
  int resamples = 0;                 // checked-mode rejection count
  std::size_t version_space_size = 0;  // |V_{n+1}|
};

/// Outcome of any finite-class audit: the estimate plus query accounting.
struct AuditResult {
  double estimate = 0.0;
  long queries = 0;        // distinct label queries spent
  bool truncated = false;  // stopped by budget before the method's own exit
  int mistakes = 0;        // oracle-auditor counterexample rounds
  Transcript transcript;   // every distinct (example, label) pair, in order
  VersionSpace final_version_space;
  std::vector<OracleRound> oracle_rounds;
  std::vector<CalRound> cal_rounds;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_AUDIT_RESULT_HPP_
