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

#ifndef FAIRAUDIT_GAUSSIAN_HPP_
#define FAIRAUDIT_GAUSSIAN_HPP_

#include <cstddef>
#include <map>
#include <vector>

#include "fairaudit/error.hpp"
#include "fairaudit/oracle.hpp"

namespace fairaudit {

/// Standard normal CDF, evaluated through a rational approximation of
/// erfc; absolute error well below 1e-10 on the real line.
double normal_cdf(double z);

/// Non-homogeneous linear classifier sign(<a,x> + b), with sign(0) = +1.
struct LinearModel {
  std::vector<double> a;
  double b = 0.0;

  std::size_t dim() const { return a.size(); }
  Label predict(const std::vector<double>& x) const;
  /// Fraction of the standard Gaussian it labels positive: Phi(b / |a|).
  double gamma() const;
};

/// Per-group Gaussian subpopulations (means and covariances).
struct GaussianPopulations {
  std::vector<double> m0, m1;
  std::vector<std::vector<double>> s0, s1;

  std::size_t dim() const { return m0.size(); }
};

/// Lower-triangular L with L L^T = s; diagonal jitter up to 1e-10 is
/// tolerated before an indefinite matrix is rejected.
std::vector<std::vector<double>> cholesky(
    const std::vector<std::vector<double>>& s);

/// sqrt(1 / sum m_i^-2): the distance from the origin to the hyperplane
/// whose per-coordinate crossings are m_i. Zero when any crossing sits at
/// the origin. 1-Lipschitz in the sup norm.
double crossing_radius(const std::vector<double>& crossings);

/// One-dimensional sign search along coordinate `i`: locate the label
/// crossing in [-beta, beta] to within eps. The endpoint labels must be
/// supplied (they normally come from the caller's beta-test) and must
/// differ; uses exactly ceil(log2(2 beta / eps)) further queries.
double binary_search(PointOracle& oracle, std::size_t i, std::size_t dim,
                     double beta, double eps, Label label_at_minus_beta,
                     Label label_at_plus_beta);

enum class GammaBranch { kEarlyReturn, kFull };

struct GammaEstimate {
  double gamma_hat = 0.0;
  long queries_used = 0;
  GammaBranch branch = GammaBranch::kEarlyReturn;
  std::vector<std::size_t> searched;        // coordinates binary-searched
  std::map<std::size_t, double> crossings;  // estimated m_i per coordinate
  double alpha = 0.0;
  double beta = 0.0;
};

/// Upper bound on the queries estimate_positive may spend at this
/// dimension and accuracy: 1 + 4d + d * ceil(log2(2 beta / eps)).
long estimate_positive_query_bound(std::size_t dim, double eps);

/// Label-efficient estimation of the positive fraction of a linear
/// classifier under the standard Gaussian: probe the axes at +-alpha for an
/// early exit, otherwise binary-search every coordinate whose crossing lies
/// within +-beta and combine the crossings into a radius.
GammaEstimate estimate_positive(PointOracle& oracle, std::size_t dim,
                                double eps);

struct GaussianAuditResult {
  double mu_hat = 0.0;
  GammaEstimate group0, group1;
  long queries = 0;
};

/// Full two-group audit: estimate each group's positive fraction through
/// the whitening transform x = m_b + L_b z and take the difference.
/// `paper_sign` flips the orientation to group0 - group1.
GaussianAuditResult gaussian_audit(PointOracle& oracle,
                                   const GaussianPopulations& pops, double eps,
                                   bool paper_sign = false);

/// Closed-form positive fraction of `model` under N(mean, L L^T); the
/// verification oracle for the audit.
double analytic_gamma(const LinearModel& model, const std::vector<double>& mean,
                      const std::vector<std::vector<double>>& l);

inline PointOracle make_linear_oracle(LinearModel model) {
  return PointOracle([model = std::move(model)](const std::vector<double>& x) {
    return model.predict(x);
  });
}

}  // namespace fairaudit

#endif  // FAIRAUDIT_GAUSSIAN_HPP_
