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

// Synthetic classes used by the experiment harness checks and shipped as
// fixture files for CLI reproduction.

#ifndef FAIRAUDIT_TESTS_FIXTURES_HPP_
#define FAIRAUDIT_TESTS_FIXTURES_HPP_

#include <cmath>
#include <vector>

#include "fairaudit/domain.hpp"

namespace fairaudit::testing {

// "Petal" class: a base hypothesis plus one petal per blade point. Petal j
// swaps its mu-neutral handle pair (equal masses, opposite base labels) and
// flips its blade (mass w_j, geometrically decaying, alternating sign), so
// mu(petal_j) = mu(base) +- w_j. Blades carry the whole mu-diameter while
// handles dominate the sampling mass: estimators that query where they
// sample spend most of their budget pruning petals in arrival order, while
// mu-directed queries prune the widest petals first. Group 0 is filler on
// which every hypothesis agrees.
inline HypothesisClass build_petal_class(int petals, double rho,
                                         double blade_share, int n_filler) {
  std::vector<double> blade(petals);
  double sum = 0.0;
  for (int j = 0; j < petals; ++j) {
    blade[j] = std::pow(rho, j);
    sum += blade[j];
  }
  for (auto& v : blade) v *= blade_share / sum;
  const double handle_mass = (1.0 - blade_share) / (2.0 * petals);

  std::vector<Example> examples;
  int id = 0;
  for (int j = 0; j < petals; ++j) {
    examples.push_back({id++, 1, 0.0, blade[j]});
    examples.push_back({id++, 1, 0.0, handle_mass});
    examples.push_back({id++, 1, 0.0, handle_mass});
  }
  for (int i = 0; i < n_filler; ++i) {
    examples.push_back({id++, 0, 1.0 / n_filler, 0.0});
  }
  Domain domain(examples, 0.5);

  Hypothesis base;
  base.labels.assign(examples.size(), -1);
  for (int j = 0; j < petals; ++j) {
    base.labels[3 * j] = (j % 2 == 0) ? -1 : +1;
    base.labels[3 * j + 1] = +1;
    base.labels[3 * j + 2] = -1;
  }
  std::vector<Hypothesis> hypotheses{base};
  for (int j = 0; j < petals; ++j) {
    Hypothesis h = base;
    h.labels[3 * j] = static_cast<Label>(-base.labels[3 * j]);
    h.labels[3 * j + 1] = -1;
    h.labels[3 * j + 2] = +1;
    hypotheses.push_back(std::move(h));
  }
  return HypothesisClass(domain, hypotheses);
}

inline HypothesisClass experiment_class_a() {
  return build_petal_class(130, 0.95, 0.25, 150);
}

inline HypothesisClass experiment_class_b() {
  return build_petal_class(150, 0.90, 0.35, 120);
}

}  // namespace fairaudit::testing

#endif  // FAIRAUDIT_TESTS_FIXTURES_HPP_
