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

#include "fairaudit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fairaudit/rng.hpp"

namespace fairaudit {

std::size_t sample_cumulative(const std::vector<double>& cumulative, Rng& rng) {
  double u = rng.uniform01() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

double mp_diameter(const HypothesisClass& cls, const Transcript& t) {
  VersionSpace v = version_space(cls, t);
  if (v.empty()) {
    throw FaError(ErrorCode::kEmptyVersionSpace,
                  "mp_diameter: transcript inconsistent with the class");
  }
  return diam_mu(v, cls).value;
}

double avg_error(const HypothesisClass& cls, const Transcript& t,
                 double true_mu) {
  VersionSpace v = version_space(cls, t);
  if (v.empty()) {
    throw FaError(ErrorCode::kEmptyVersionSpace,
                  "avg_error: transcript inconsistent with the class");
  }
  double sum = 0.0;
  std::size_t n = 0;
  v.for_each([&](std::size_t h) {
    sum += std::fabs(cls.mu_of(h) - true_mu);
    ++n;
  });
  return sum / static_cast<double>(n);
}

double disagreement_coefficient(const HypothesisClass& cls, double r) {
  if (!(r > 0.0)) {
    throw FaError(ErrorCode::kInvalidInput,
                  "disagreement_coefficient: r must be positive");
  }
  const std::size_t k = cls.size();
  const Domain& domain = cls.domain();

  // Pairwise disagreement masses; the step points of r' -> Pr(DIS(B(h,r'))).
  std::vector<std::vector<double>> dist(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      double m = disagreement_mass(cls.hypothesis(a), cls.hypothesis(b), domain);
      dist[a][b] = dist[b][a] = m;
    }
  }

  double theta = 0.0;
  for (std::size_t center = 0; center < k; ++center) {
    std::vector<double> radii{r};
    for (std::size_t other = 0; other < k; ++other) {
      if (dist[center][other] >= r) radii.push_back(dist[center][other]);
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double rp : radii) {
      std::vector<std::size_t> ball;
      for (std::size_t other = 0; other < k; ++other) {
        if (dist[center][other] <= rp + kMuTolerance) ball.push_back(other);
      }
      VersionSpace b = VersionSpace::of(k, ball);
      double mass = 0.0;
      for (std::size_t x : disagreement_region(b, cls)) {
        mass += domain.marginal(x);
      }
      theta = std::max(theta, mass / rp);
    }
  }
  return theta;
}

ShatteredInstance gen_shattered(int n) {
  if (n < 1 || n > 16) {
    throw FaError(ErrorCode::kSizeLimit,
                  "gen_shattered: n must lie in [1, 16], got " +
                      std::to_string(n));
  }
  std::vector<Example> examples;
  examples.push_back(Example{0, 0, 1.0, 0.0});
  for (int i = 1; i <= n; ++i) {
    examples.push_back(Example{i, 1, 0.0, 1.0 / n});
  }
  Domain domain(std::move(examples), 0.5);

  std::vector<Hypothesis> hypotheses;
  hypotheses.reserve(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Hypothesis h;
    h.labels.assign(static_cast<std::size_t>(n) + 1, Label{-1});
    for (int i = 0; i < n; ++i) {
      if ((bits >> i) & 1) h.labels[static_cast<std::size_t>(i) + 1] = 1;
    }
    hypotheses.push_back(std::move(h));
  }
  // bits == 0 is the all-negative hypothesis.
  return ShatteredInstance{HypothesisClass(std::move(domain), std::move(hypotheses)),
                           0};
}

namespace {

Domain random_domain(int m, Rng& rng) {
  // Both groups nonempty; conditional masses from normalized uniforms.
  std::vector<int> groups(static_cast<std::size_t>(m));
  while (true) {
    int ones = 0;
    for (auto& g : groups) {
      g = rng.uniform01() < 0.5 ? 1 : 0;
      ones += g;
    }
    if (ones > 0 && ones < m) break;
  }
  std::vector<double> raw(static_cast<std::size_t>(m));
  double sum0 = 0.0, sum1 = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = 0.1 + rng.uniform01();
    (groups[i] == 1 ? sum1 : sum0) += raw[i];
  }
  std::vector<Example> examples;
  for (int i = 0; i < m; ++i) {
    Example e;
    e.id = i;
    e.group = groups[static_cast<std::size_t>(i)];
    if (e.group == 1) {
      e.p1 = raw[static_cast<std::size_t>(i)] / sum1;
    } else {
      e.p0 = raw[static_cast<std::size_t>(i)] / sum0;
    }
    examples.push_back(e);
  }
  double pi1 = 0.2 + 0.6 * rng.uniform01();
  return Domain(std::move(examples), pi1);
}

}  // namespace

HypothesisClass gen_random_class(int m, int k, std::uint64_t seed) {
  if (m < 2 || k < 2) {
    throw FaError(ErrorCode::kInvalidInput,
                  "gen_random_class: need m >= 2 and k >= 2");
  }
  Rng rng(seed);
  Domain domain = random_domain(m, rng);

  std::set<std::vector<Label>> seen;
  std::vector<Hypothesis> hypotheses;
  int attempts = 0;
  const int max_attempts = 200 * k;
  while (static_cast<int>(hypotheses.size()) < k && attempts < max_attempts) {
    ++attempts;
    Hypothesis h;
    h.labels.resize(static_cast<std::size_t>(m));
    for (auto& l : h.labels) l = rng.uniform01() < 0.5 ? Label{+1} : Label{-1};
    if (seen.insert(h.labels).second) hypotheses.push_back(std::move(h));
  }
  if (hypotheses.size() < 2) {
    throw FaError(ErrorCode::kDegenerateClass,
                  "gen_random_class: fewer than 2 distinct labelings");
  }
  return HypothesisClass(std::move(domain), std::move(hypotheses));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    std::size_t b = cell.find_first_not_of(" \t\r");
    std::size_t e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

Dataset ingest_csv_text(const std::string& text, const std::string& group_column,
                        const std::vector<std::string>& feature_columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw FaError(ErrorCode::kParseError, "csv: empty file");
  }
  std::vector<std::string> header = split_csv_line(line);
  auto column_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw FaError(ErrorCode::kParseError, "csv: missing column '" + name + "'");
  };
  std::size_t group_idx = column_of(group_column);
  std::vector<std::size_t> feature_idx;
  for (const auto& f : feature_columns) feature_idx.push_back(column_of(f));

  std::vector<int> groups;
  std::vector<std::vector<double>> features;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells = split_csv_line(line);
    std::string at = "csv row " + std::to_string(row) + ": ";
    if (cells.size() != header.size()) {
      throw FaError(ErrorCode::kParseError,
                    at + "expected " + std::to_string(header.size()) +
                        " cells, got " + std::to_string(cells.size()));
    }
    const std::string& g = cells[group_idx];
    if (g != "0" && g != "1") {
      throw FaError(ErrorCode::kParseError,
                    at + "group column must be 0 or 1, got '" + g + "'");
    }
    groups.push_back(g == "1" ? 1 : 0);
    std::vector<double> feats;
    for (std::size_t fi : feature_idx) {
      try {
        std::size_t pos = 0;
        feats.push_back(std::stod(cells[fi], &pos));
        if (pos != cells[fi].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw FaError(ErrorCode::kParseError,
                      at + "cannot parse '" + cells[fi] + "' as a number");
      }
    }
    features.push_back(std::move(feats));
  }

  std::size_t n1 = 0;
  for (int g : groups) n1 += static_cast<std::size_t>(g);
  if (groups.empty() || n1 == 0 || n1 == groups.size()) {
    throw FaError(ErrorCode::kInvalidInput,
                  "csv: both groups must be present (minority mass would be 0)");
  }
  std::size_t n0 = groups.size() - n1;

  std::vector<Example> examples;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    Example e;
    e.id = static_cast<int>(i);
    e.group = groups[i];
    if (e.group == 1) {
      e.p1 = 1.0 / static_cast<double>(n1);
    } else {
      e.p0 = 1.0 / static_cast<double>(n0);
    }
    examples.push_back(e);
  }
  double pi1 = static_cast<double>(n1) / static_cast<double>(groups.size());
  return Dataset{Domain(std::move(examples), pi1), std::move(features)};
}

Dataset ingest_csv(const std::string& path, const std::string& group_column,
                   const std::vector<std::string>& feature_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FaError(ErrorCode::kIoError, "cannot open csv: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ingest_csv_text(ss.str(), group_column, feature_columns);
}

HypothesisClass gen_threshold_class(const Dataset& dataset, int k,
                                    std::uint64_t seed) {
  if (k < 2) {
    throw FaError(ErrorCode::kInvalidInput, "gen_threshold_class: k must be >= 2");
  }
  if (dataset.features.empty() || dataset.features[0].empty()) {
    throw FaError(ErrorCode::kInvalidInput,
                  "gen_threshold_class: dataset has no features");
  }
  const std::size_t d = dataset.features[0].size();
  const std::size_t n = dataset.features.size();

  // Scale offsets to the feature spread so the hyperplanes actually cut
  // through the data cloud.
  double lo = dataset.features[0][0], hi = dataset.features[0][0];
  for (const auto& row : dataset.features) {
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  double scale = std::max(1e-9, hi - lo);

  Rng rng(seed);
  std::set<std::vector<Label>> seen;
  std::vector<Hypothesis> hypotheses;
  int attempts = 0;
  const int max_attempts = 200 * k;
  while (static_cast<int>(hypotheses.size()) < k && attempts < max_attempts) {
    ++attempts;
    std::vector<double> a(d);
    for (auto& v : a) v = rng.normal();
    double b = rng.normal() * scale;
    Hypothesis h;
    h.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double dot = b;
      for (std::size_t j = 0; j < d; ++j) dot += a[j] * dataset.features[i][j];
      h.labels[i] = dot >= 0.0 ? Label{+1} : Label{-1};
    }
    if (seen.insert(h.labels).second) hypotheses.push_back(std::move(h));
  }
  if (hypotheses.size() < 2) {
    throw FaError(ErrorCode::kDegenerateClass,
                  "gen_threshold_class: fewer than 2 distinct labelings");
  }
  return HypothesisClass(dataset.domain, std::move(hypotheses));
}

}  // namespace fairaudit
