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

#ifndef FAIRAUDIT_HARNESS_HPP_
#define FAIRAUDIT_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fairaudit/domain.hpp"
#include "fairaudit/version_space.hpp"

namespace fairaudit {

/// Exact mu-diameter of the version space induced by a transcript: the
/// largest amount a post-audit model swap could move the reported
/// demographic parity.
double mp_diameter(const HypothesisClass& cls, const Transcript& t);

/// Exact mean absolute mu-error over the induced version space, with the
/// hypotheses weighted uniformly.
double avg_error(const HypothesisClass& cls, const Transcript& t,
                 double true_mu);

/// Disagreement coefficient theta(r): the sup over centers h and radii
/// r' >= r of Pr(DIS(B(h, r'))) / r'. Exact for finite classes; the sup is
/// attained at r or at an achieved pairwise distance.
double disagreement_coefficient(const HypothesisClass& cls, double r);

struct ShatteredInstance {
  HypothesisClass cls;
  std::size_t target;  // index of the all-negative hypothesis
};

/// The separation fixture: group 0 is a point mass on example 0, group 1 is
/// uniform on the remaining n examples, and the class shatters those n
/// points while pinning example 0 to -1.
ShatteredInstance gen_shattered(int n);

/// Random class over a random two-group domain: k distinct random +/-1
/// labelings of m examples. Throws degenerate-class when fewer than two
/// distinct labelings come out.
HypothesisClass gen_random_class(int m, int k, std::uint64_t seed);

/// A row-level dataset: features plus the induced domain (uniform
/// conditional mass per row within its group).
struct Dataset {
  Domain domain;
  std::vector<std::vector<double>> features;
};

/// Parse a headered CSV into a Dataset. The group column must be binary and
/// both groups must be present; malformed cells report their row number.
Dataset ingest_csv(const std::string& path, const std::string& group_column,
                   const std::vector<std::string>& feature_columns);
Dataset ingest_csv_text(const std::string& text, const std::string& group_column,
                        const std::vector<std::string>& feature_columns);

/// k random hyperplanes thresholded on the dataset's features, deduplicated
/// by induced labeling. Throws degenerate-class if fewer than two remain.
HypothesisClass gen_threshold_class(const Dataset& dataset, int k,
                                    std::uint64_t seed);

}  // namespace fairaudit

#endif  // FAIRAUDIT_HARNESS_HPP_
