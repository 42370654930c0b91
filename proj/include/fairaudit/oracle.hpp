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

#ifndef FAIRAUDIT_ORACLE_HPP_
#define FAIRAUDIT_ORACLE_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "fairaudit/domain.hpp"

namespace fairaudit {

/// Black-box label access to the audited model, with query counting, a
/// deterministic answer cache and an ordered transcript. Only cache misses
/// count as queries; the model's answer to a repeated example is already
/// known. Every auditor spends queries through this type.
class CountingOracle {
 public:
  using Fn = std::function<Label(std::size_t)>;

  explicit CountingOracle(Fn fn) : fn_(std::move(fn)) {}

  Label query(std::size_t id) {
    auto it = cache_.find(id);
    if (it != cache_.end()) return it->second;
    Label y = fn_(id);
    cache_.emplace(id, y);
    transcript_.add(static_cast<int>(id), y);
    ++count_;
    return y;
  }

  long count() const { return count_; }
  const Transcript& transcript() const { return transcript_; }
  bool seen(std::size_t id) const { return cache_.count(id) != 0; }

 private:
  Fn fn_;
  std::map<std::size_t, Label> cache_;
  Transcript transcript_;
  long count_ = 0;
};

/// The usual simulation setup: the audited model is a known hypothesis.
inline CountingOracle make_counting_oracle(Hypothesis h) {
  return CountingOracle(
      [h = std::move(h)](std::size_t id) { return h.labels[id]; });
}

/// Black-box sign access at arbitrary feature vectors; the query model of
/// the continuous-domain auditor.
class PointOracle {
 public:
  using Fn = std::function<Label(const std::vector<double>&)>;

  explicit PointOracle(Fn fn) : fn_(std::move(fn)) {}

  Label query(const std::vector<double>& x) {
    Label y = fn_(x);
    history_.emplace_back(x, y);
    ++count_;
    return y;
  }

  long count() const { return count_; }
  const std::vector<std::pair<std::vector<double>, Label>>& history() const {
    return history_;
  }

 private:
  Fn fn_;
  std::vector<std::pair<std::vector<double>, Label>> history_;
  long count_ = 0;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_ORACLE_HPP_
