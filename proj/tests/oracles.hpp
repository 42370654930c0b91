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

// Test-only reference implementations. Everything here recomputes a result
// by the most direct route available (plain sums, pairwise scans, subset
// enumeration, quadrature) and never calls into the code path it checks.

#ifndef FAIRAUDIT_TESTS_ORACLES_HPP_
#define FAIRAUDIT_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "fairaudit/domain.hpp"
#include "fairaudit/version_space.hpp"

namespace fairaudit::testing {

// Demographic parity as a direct weighted sum.
inline double mu_bruteforce(const Hypothesis& h, const Domain& d) {
  double pos1 = 0.0, pos0 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (h.labels[i] == 1) {
      pos1 += d.example(i).p1;
      pos0 += d.example(i).p0;
    }
  }
  return pos1 - pos0;
}

// Diameter by full pairwise scan over member indices.
inline double diam_pair_scan(const std::vector<std::size_t>& members,
                             const HypothesisClass& cls) {
  double worst = 0.0;
  for (std::size_t a : members) {
    for (std::size_t b : members) {
      worst = std::max(worst, cls.mu_of(a) - cls.mu_of(b));
    }
  }
  return worst;
}

// Version space by direct filtering against the transcript.
inline std::vector<std::size_t> consistent_filter(const HypothesisClass& cls,
                                                  const Transcript& t) {
  std::vector<std::size_t> out;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    bool ok = true;
    for (const auto& [x, y] : t.entries()) {
      if (cls.label(h, static_cast<std::size_t>(x)) != y) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(h);
  }
  return out;
}

// Is S a (mu,eps)-specifying set for `reference`? Checked straight from the
// definition: every pair of hypotheses agreeing with the reference on S has
// mu values within 2*eps.
inline bool is_specifying_set(const std::vector<std::size_t>& s,
                              const std::vector<Label>& reference,
                              const HypothesisClass& cls, double eps) {
  std::vector<std::size_t> agree;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    bool ok = true;
    for (std::size_t x : s) {
      if (cls.label(h, x) != reference[x]) {
        ok = false;
        break;
      }
    }
    if (ok) agree.push_back(h);
  }
  for (std::size_t a : agree) {
    for (std::size_t b : agree) {
      if (cls.mu_of(a) - cls.mu_of(b) > 2.0 * eps + 1e-12) return false;
    }
  }
  return true;
}

// Smallest specifying-set size by raw subset enumeration (no cover-mask
// reductions); exponential in |X|.
inline int min_specifying_size_enum(const std::vector<Label>& reference,
                                    const HypothesisClass& cls, double eps) {
  const std::size_t m = cls.domain_size();
  for (std::size_t k = 0; k <= m; ++k) {
    // iterate all subsets of size k
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<std::size_t> s(idx.begin(), idx.end());
      if (is_specifying_set(s, reference, cls, eps)) return static_cast<int>(k);
      if (k == 0) break;
      std::size_t i = k;
      bool done = false;
      while (i > 0) {
        --i;
        if (idx[i] != i + m - k) {
          ++idx[i];
          for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return static_cast<int>(m);
}

// Standard normal CDF by adaptive-step Simpson quadrature in long double;
// the high-precision reference for the rational evaluation.
inline double phi_quadrature(double z) {
  long double x = std::fabs((long double)z);
  const int panels = 4000;  // Simpson error ~ (x/n)^4, far below 1e-13 here
  long double h = x / panels;
  auto density = [](long double t) {
    return std::exp(-t * t / 2.0L) * 0.39894228040143267793994L;
  };
  long double sum = density(0.0L) + density(x);
  for (int i = 1; i < panels; ++i) {
    sum += density(h * i) * ((i & 1) ? 4.0L : 2.0L);
  }
  long double integral = sum * h / 3.0L;
  long double tail = 0.5L - integral;  // Pr(Z > x)
  if (tail < 0.0L) tail = 0.0L;
  return static_cast<double>(z >= 0 ? 1.0L - tail : tail);
}

}  // namespace fairaudit::testing

#endif  // FAIRAUDIT_TESTS_ORACLES_HPP_
