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

#ifndef FAIRAUDIT_DOMAIN_HPP_
#define FAIRAUDIT_DOMAIN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fairaudit/error.hpp"

namespace fairaudit {

// Tolerance for probability-mass normalization checks.
inline constexpr double kMassTolerance = 1e-9;
// Tolerance used when comparing demographic-parity gaps against 2*eps, so
// that diameter decisions are deterministic under float rounding.
inline constexpr double kMuTolerance = 1e-12;

using Label = std::int8_t;  // +1 or -1

/// One point of the finite instance space. Each example belongs to exactly
/// one subpopulation; a feature point present in both groups is modeled as
/// two examples. `p0`/`p1` are the conditional masses Pr(x | group).
struct Example {
  int id = 0;
  int group = 0;     // value of the sensitive attribute, 0 or 1
  double p0 = 0.0;   // mass within group 0; zero when group == 1
  double p1 = 0.0;   // mass within group 1; zero when group == 0
};

/// Finite instance distribution: the examples plus Pr(group = 1).
class Domain {
 public:
  Domain() = default;
  Domain(std::vector<Example> examples, double pi1);

  std::size_t size() const { return examples_.size(); }
  const Example& example(std::size_t id) const { return examples_[id]; }
  const std::vector<Example>& examples() const { return examples_; }
  double pi1() const { return pi1_; }

  /// min(Pr(group=1), Pr(group=0)); positive by construction.
  double minority_mass() const { return pi1_ < 0.5 ? pi1_ : 1.0 - pi1_; }

  /// Unconditional mass of one example: pi1*p1 + (1-pi1)*p0.
  double marginal(std::size_t id) const {
    const Example& e = examples_[id];
    return pi1_ * e.p1 + (1.0 - pi1_) * e.p0;
  }

 private:
  void validate() const;

  std::vector<Example> examples_;
  double pi1_ = 0.5;
};

/// A classifier over the domain as a dense vector of +/-1 labels.
struct Hypothesis {
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  Label operator()(std::size_t id) const { return labels[id]; }
  bool operator==(const Hypothesis& o) const { return labels == o.labels; }
};

/// Demographic parity of `h` under `domain`:
///   Pr(h = +1 | group 1) - Pr(h = +1 | group 0).
double mu(const Hypothesis& h, const Domain& domain);

/// Unconditional mass of the region where the two classifiers disagree.
double disagreement_mass(const Hypothesis& a, const Hypothesis& b,
                         const Domain& domain);

/// The finite hypothesis class together with its domain. Demographic
/// parities are precomputed once; they are exact functions of the known
/// distribution, never estimated.
class HypothesisClass {
 public:
  HypothesisClass(Domain domain, std::vector<Hypothesis> hypotheses);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return hypotheses_.size(); }
  std::size_t domain_size() const { return domain_.size(); }
  const Hypothesis& hypothesis(std::size_t i) const { return hypotheses_[i]; }
  Label label(std::size_t h, std::size_t x) const {
    return hypotheses_[h].labels[x];
  }
  double mu_of(std::size_t h) const { return mu_[h]; }
  const std::vector<double>& mu_values() const { return mu_; }

 private:
  Domain domain_;
  std::vector<Hypothesis> hypotheses_;
  std::vector<double> mu_;
};

/// Ordered labeled queries. Re-adding an id with the same label is a no-op;
/// a conflicting label is rejected.
class Transcript {
 public:
  Transcript() = default;

  void add(int id, Label y);
  bool contains(int id) const;
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<int, Label>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<int, Label>> entries_;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_DOMAIN_HPP_
