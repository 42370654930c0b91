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

#include "fairaudit/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fairaudit {

namespace {

// Rational approximation of erfc after Cody's three-interval scheme. The
// exp(-x^2) factor is split around a 1/16-grid point to avoid cancellation
// in the argument squaring.
double erfc_rational(double x) {
  static const double a[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                              3.77485237685302021e2, 3.20937758913846947e3,
                              1.85777706184603153e-1};
  static const double b[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                              1.28261652607737228e3, 2.84423683343917062e3};
  static const double c[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                              6.61191906371416295e1,  2.98635138197400131e2,
                              8.81952221241769090e2,  1.71204761263407058e3,
                              2.05107837782607147e3,  1.23033935479799725e3,
                              2.15311535474403846e-8};
  static const double d[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                              5.37181101862009858e2, 1.62138957456669019e3,
                              3.29079923573345963e3, 4.36261909014324716e3,
                              3.43936767414372164e3, 1.23033935480374942e3};
  static const double p[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                              1.25781726111229246e-1, 1.60837851487422766e-2,
                              6.58749161529837803e-4, 1.63153871373020978e-2};
  static const double q[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                              5.27905102951428412e-1, 6.05183413124413191e-2,
                              2.33520497626869185e-3};

  const double y = std::fabs(x);
  double result;
  if (y <= 0.46875) {
    double z = y > 1.11e-16 ? y * y : 0.0;
    double num = a[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
      num = (num + a[i]) * z;
      den = (den + b[i]) * z;
    }
    double erf_x = x * (num + a[3]) / (den + b[3]);
    return 1.0 - erf_x;
  }
  if (y <= 4.0) {
    double num = c[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + c[i]) * y;
      den = (den + d[i]) * y;
    }
    result = (num + c[7]) / (den + d[7]);
  } else {
    double z = 1.0 / (y * y);
    double num = p[5] * z;
    double den = z;
    for (int i = 0; i < 4; ++i) {
      num = (num + p[i]) * z;
      den = (den + q[i]) * z;
    }
    result = z * (num + p[4]) / (den + q[4]);
    result = (5.6418958354775628695e-1 - result) / y;
  }
  double ysq = std::floor(y * 16.0) / 16.0;
  result *= std::exp(-ysq * ysq) * std::exp(-(y - ysq) * (y + ysq));
  return x < 0.0 ? 2.0 - result : result;
}

constexpr double kBetaCap = 1e12;
constexpr double kSqrt2 = 1.4142135623730950488;

}  // namespace

double normal_cdf(double z) {
  if (std::isnan(z)) {
    throw FaError(ErrorCode::kInvalidInput, "normal_cdf: NaN input");
  }
  return 0.5 * erfc_rational(-z / kSqrt2);
}

Label LinearModel::predict(const std::vector<double>& x) const {
  if (x.size() != a.size()) {
    throw FaError(ErrorCode::kInvalidInput, "linear model: dimension mismatch");
  }
  double dot = b;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * x[i];
  return dot >= 0.0 ? +1 : -1;
}

double LinearModel::gamma() const {
  double norm = 0.0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    throw FaError(ErrorCode::kInvalidInput, "linear model: zero weight vector");
  }
  return normal_cdf(b / norm);
}

std::vector<std::vector<double>> cholesky(
    const std::vector<std::vector<double>>& s) {
  const std::size_t n = s.size();
  for (const auto& row : s) {
    if (row.size() != n) {
      throw FaError(ErrorCode::kInvalidInput, "cholesky: matrix not square");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(s[i][j] - s[j][i]) > 1e-12) {
        throw FaError(ErrorCode::kInvalidInput, "cholesky: matrix not symmetric");
      }
    }
  }
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double diag = s[j][j];
    for (std::size_t k = 0; k < j; ++k) diag -= l[j][k] * l[j][k];
    if (diag < -1e-10) {
      throw FaError(ErrorCode::kNotPsd,
                    "cholesky: matrix is not positive semidefinite");
    }
    // Jitter floor keeps rank-deficient inputs factorable; it perturbs the
    // reconstruction by at most 1e-10 on the diagonal.
    diag = std::max(diag, 1e-10);
    l[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= l[i][k] * l[j][k];
      l[i][j] = v / l[j][j];
    }
  }
  return l;
}

double crossing_radius(const std::vector<double>& crossings) {
  if (crossings.empty()) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double m : crossings) {
    if (std::fabs(m) < 1e-12) return 0.0;
    sum += 1.0 / (m * m);
  }
  return std::sqrt(1.0 / sum);
}

namespace {

std::vector<double> axis_point(std::size_t dim, std::size_t i, double value) {
  std::vector<double> x(dim, 0.0);
  x[i] = value;
  return x;
}

}  // namespace

double binary_search(PointOracle& oracle, std::size_t i, std::size_t dim,
                     double beta, double eps, Label label_at_minus_beta,
                     Label label_at_plus_beta) {
  if (!(beta > 0.0) || !(eps > 0.0)) {
    throw FaError(ErrorCode::kInvalidInput,
                  "binary_search: beta and eps must be positive");
  }
  if (label_at_minus_beta == label_at_plus_beta) {
    throw FaError(ErrorCode::kNoCrossing,
                  "binary_search: endpoint labels agree, no crossing in range");
  }
  double lo = -beta, hi = beta;
  Label lo_label = label_at_minus_beta;
  double mid = 0.0;
  int guard = 0;
  while (hi - lo >= eps && guard++ < 2000) {
    mid = 0.5 * (hi + lo);
    Label y = oracle.query(axis_point(dim, i, mid));
    if (y == lo_label) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

long estimate_positive_query_bound(std::size_t dim, double eps) {
  double d = static_cast<double>(dim);
  double beta = 2.0 * std::pow(d, 2.5) * std::pow(std::log(1.0 / eps), 0.75) *
                std::sqrt(1.0 / eps);
  beta = std::min(beta, kBetaCap);
  long per_search = static_cast<long>(std::ceil(std::log2(2.0 * beta / eps)));
  return 1 + 4 * static_cast<long>(dim) + static_cast<long>(dim) * per_search;
}

GammaEstimate estimate_positive(PointOracle& oracle, std::size_t dim,
                                double eps) {
  if (dim == 0) {
    throw FaError(ErrorCode::kInvalidInput, "estimate_positive: dim is zero");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw FaError(ErrorCode::kInvalidInput,
                  "estimate_positive: eps must lie in (0, 1/2)");
  }
  GammaEstimate out;
  const double d = static_cast<double>(dim);
  out.alpha = std::sqrt(2.0 * d * std::log(1.0 / eps));
  out.beta = 2.0 * std::pow(d, 2.5) * std::pow(std::log(1.0 / eps), 0.75) *
             std::sqrt(1.0 / eps);
  if (out.beta > kBetaCap) {
    std::fprintf(stderr,
                 "fairaudit: probe range %.3g capped at %.3g; results may "
                 "degrade for this eps\n",
                 out.beta, kBetaCap);
    out.beta = kBetaCap;
  }

  const long start = oracle.count();
  Label s = oracle.query(std::vector<double>(dim, 0.0));

  std::vector<Label> at_plus_alpha(dim), at_minus_alpha(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    at_plus_alpha[i] = oracle.query(axis_point(dim, i, out.alpha));
    at_minus_alpha[i] = oracle.query(axis_point(dim, i, -out.alpha));
  }
  bool all_agree = true;
  for (std::size_t i = 0; i < dim; ++i) {
    if (at_plus_alpha[i] != at_minus_alpha[i]) {
      all_agree = false;
      break;
    }
  }
  if (all_agree) {
    // Every crossing lies beyond alpha, so the plane is far from the
    // origin and the positive mass is within eps of 0 or 1.
    out.gamma_hat = s > 0 ? 1.0 : 0.0;
    out.branch = GammaBranch::kEarlyReturn;
    out.queries_used = oracle.count() - start;
    return out;
  }

  out.branch = GammaBranch::kFull;
  std::vector<double> crossings;
  for (std::size_t i = 0; i < dim; ++i) {
    Label plus = oracle.query(axis_point(dim, i, out.beta));
    Label minus = oracle.query(axis_point(dim, i, -out.beta));
    if (plus == minus) continue;  // crossing beyond beta; coordinate skipped
    double m = binary_search(oracle, i, dim, out.beta, eps, minus, plus);
    out.searched.push_back(i);
    out.crossings[i] = m;
    crossings.push_back(m);
  }
  if (crossings.empty()) {
    // Cannot happen for a realizable linear oracle: the coordinate that
    // failed the alpha test has its crossing within alpha < beta.
    throw FaError(ErrorCode::kNonRealizableOracle,
                  "estimate_positive: inconsistent axis probes");
  }
  double r_hat = crossing_radius(crossings);
  out.gamma_hat = normal_cdf(static_cast<double>(s) * r_hat);
  out.queries_used = oracle.count() - start;
  return out;
}

GaussianAuditResult gaussian_audit(PointOracle& oracle,
                                   const GaussianPopulations& pops, double eps,
                                   bool paper_sign) {
  const std::size_t dim = pops.dim();
  if (dim == 0 || pops.m1.size() != dim || pops.s0.size() != dim ||
      pops.s1.size() != dim) {
    throw FaError(ErrorCode::kInvalidInput,
                  "gaussian_audit: inconsistent population dimensions");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw FaError(ErrorCode::kInvalidInput,
                  "gaussian_audit: eps must lie in (0,1)");
  }
  auto l0 = cholesky(pops.s0);
  auto l1 = cholesky(pops.s1);

  const long start = oracle.count();
  auto run_group = [&](const std::vector<double>& mean,
                       const std::vector<std::vector<double>>& l) {
    // Whitened view of the model: each query costs one query to the base
    // oracle at m + L z.
    PointOracle composed([&](const std::vector<double>& z) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        double v = mean[i];
        for (std::size_t j = 0; j < dim; ++j) v += l[i][j] * z[j];
        x[i] = v;
      }
      return oracle.query(x);
    });
    return estimate_positive(composed, dim, eps / 2.0);
  };

  GaussianAuditResult out;
  out.group0 = run_group(pops.m0, l0);
  out.group1 = run_group(pops.m1, l1);
  out.mu_hat = paper_sign ? out.group0.gamma_hat - out.group1.gamma_hat
                          : out.group1.gamma_hat - out.group0.gamma_hat;
  out.queries = oracle.count() - start;
  return out;
}

double analytic_gamma(const LinearModel& model, const std::vector<double>& mean,
                      const std::vector<std::vector<double>>& l) {
  const std::size_t dim = model.dim();
  if (mean.size() != dim || l.size() != dim) {
    throw FaError(ErrorCode::kInvalidInput, "analytic_gamma: dimension mismatch");
  }
  double shift = model.b;
  for (std::size_t i = 0; i < dim; ++i) shift += model.a[i] * mean[i];
  // |L^T a|: the standard deviation of <a, x> under N(mean, L L^T).
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < dim; ++i) v += l[i][j] * model.a[i];
    norm_sq += v * v;
  }
  double norm = std::sqrt(norm_sq);
  if (norm < 1e-300) return shift >= 0.0 ? 1.0 : 0.0;
  return normal_cdf(shift / norm);
}

}  // namespace fairaudit
