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

#include "fairaudit/cost.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "fairaudit/class_io.hpp"

namespace fairaudit {

namespace {

bool diam_closed(double diam, double eps) {
  return diam <= 2.0 * eps + kMuTolerance;
}

}  // namespace

CostTable::CostTable(const HypothesisClass& cls, double eps)
    : cls_(&cls), eps_(eps), class_hash_(class_hash(cls)) {}

std::size_t CostTable::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return table_.size();
}

std::optional<CostTable::Entry> CostTable::lookup(const Key128& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void CostTable::store(const Key128& key, Entry e) {
  std::lock_guard<std::mutex> lock(mutex_);
  table_.emplace(key, e);
}

void CostTable::save(const std::string& path) const {
  std::lock_guard<std::mutex> lock(mutex_);
  nlohmann::json j;
  j["class_hash"] = class_hash_;
  j["eps"] = eps_;
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, entry] : table_) {
    entries[key.hex()] = {entry.cost, entry.best_query};
  }
  j["entries"] = std::move(entries);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FaError(ErrorCode::kIoError, "cannot write cost cache: " + path);
  }
  out << j.dump() << "\n";
}

bool CostTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return false;
  if (!j.contains("class_hash") || !j.contains("eps") || !j.contains("entries")) {
    return false;
  }
  if (j["class_hash"].get<std::uint64_t>() != class_hash_) return false;
  if (j["eps"].get<double>() != eps_) return false;
  std::lock_guard<std::mutex> lock(mutex_);
  for (const auto& [hex, val] : j["entries"].items()) {
    if (hex.size() != 32 || !val.is_array() || val.size() != 2) continue;
    Key128 key;
    key.hi = std::stoull(hex.substr(0, 16), nullptr, 16);
    key.lo = std::stoull(hex.substr(16), nullptr, 16);
    table_[key] = Entry{val[0].get<int>(), val[1].get<int>()};
  }
  return true;
}

namespace {

// Value recursion over version spaces. For x in the disagreement region
// both label branches are nonempty and strictly smaller, so the recursion
// is well-founded; points outside it leave V unchanged and can never help.
int cost_rec(const VersionSpace& v, double eps, const HypothesisClass& cls,
             CostTable& table) {
  Key128 key = v.key();
  if (auto hit = table.lookup(key)) return hit->cost;

  DiamResult d = diam_mu(v, cls);
  if (diam_closed(d.value, eps)) {
    table.store(key, CostTable::Entry{0, -1});
    return 0;
  }

  int best = -1;
  int best_x = -1;
  for (std::size_t x : disagreement_region(v, cls)) {
    int worst = 0;
    for (Label y : {Label{+1}, Label{-1}}) {
      VersionSpace child = restrict(v, x, y, cls);
      if (child.empty()) continue;  // an unrealizable answer
      worst = std::max(worst, cost_rec(child, eps, cls, table));
      if (best >= 0 && worst >= best) break;  // cannot beat the incumbent
    }
    if (best < 0 || worst < best) {
      best = worst;
      best_x = static_cast<int>(x);
    }
  }

  int value = 1 + best;
  table.store(key, CostTable::Entry{value, best_x});
  return value;
}

}  // namespace

int cost(const VersionSpace& v, double eps, const HypothesisClass& cls,
         CostTable& table) {
  if (v.empty()) {
    throw FaError(ErrorCode::kEmptyVersionSpace, "cost: empty version space");
  }
  if (!(eps > 0.0)) {
    throw FaError(ErrorCode::kInvalidInput, "cost: eps must be positive");
  }
  return cost_rec(v, eps, cls, table);
}

std::size_t best_query(const VersionSpace& v, double eps,
                       const HypothesisClass& cls, CostTable& table) {
  int c = cost(v, eps, cls, table);
  if (c == 0) {
    throw FaError(ErrorCode::kNoQueryNeeded,
                  "best_query: diameter already within 2*eps");
  }
  auto entry = table.lookup(v.key());
  if (entry && entry->best_query >= 0) {
    return static_cast<std::size_t>(entry->best_query);
  }
  // Reachable only via a cache file that lacks the argmin: recompute it
  // from the childrens' values, smallest id on ties.
  int best = -1;
  std::size_t best_x = 0;
  for (std::size_t x : disagreement_region(v, cls)) {
    int worst = 0;
    for (Label y : {Label{+1}, Label{-1}}) {
      VersionSpace child = restrict(v, x, y, cls);
      if (child.empty()) continue;
      worst = std::max(worst, cost_rec(child, eps, cls, table));
    }
    if (best < 0 || worst < best) {
      best = worst;
      best_x = x;
    }
  }
  return best_x;
}

AuditResult minimax_audit(CountingOracle& oracle, const HypothesisClass& cls,
                          double eps, CostTable& table,
                          std::optional<long> budget) {
  AuditResult result;
  const long start_count = oracle.count();
  VersionSpace v = VersionSpace::full(cls);
  while (true) {
    DiamResult d = diam_mu(v, cls);
    if (diam_closed(d.value, eps)) break;
    if (budget && oracle.count() - start_count >= *budget) {
      result.truncated = true;
      break;
    }
    std::size_t x = best_query(v, eps, cls, table);
    Label y = oracle.query(x);
    VersionSpace next = restrict(v, x, y, cls);
    if (next.empty()) {
      throw FaError(ErrorCode::kNonRealizableOracle,
                    "minimax_audit: oracle answer at example " +
                        std::to_string(x) +
                        " is inconsistent with every hypothesis");
    }
    result.transcript.add(static_cast<int>(x), y);
    v = next;
  }
  DiamResult d = diam_mu(v, cls);
  result.estimate = 0.5 * (cls.mu_of(d.argmax) + cls.mu_of(d.argmin));
  result.queries = oracle.count() - start_count;
  result.final_version_space = v;
  return result;
}

namespace {

// Feasibility search for "some (mu,eps)-separating tree of depth <= k".
// Memoizes, per version space, the largest depth known infeasible and the
// smallest depth known feasible. Values are copied out before recursing;
// the map may rehash underneath.
struct TreeSearchMemo {
  std::unordered_map<Key128, std::pair<int, int>, Key128Hash> bounds;

  std::pair<int, int> get(const Key128& key) const {
    auto it = bounds.find(key);
    if (it == bounds.end()) return {-1, std::numeric_limits<int>::max()};
    return it->second;
  }
  void note_infeasible(const Key128& key, int depth) {
    auto b = get(key);
    b.first = std::max(b.first, depth);
    bounds[key] = b;
  }
  void note_feasible(const Key128& key, int depth) {
    auto b = get(key);
    b.second = std::min(b.second, depth);
    bounds[key] = b;
  }
};

bool separable_within(const VersionSpace& v, int depth, double eps,
                      const HypothesisClass& cls, TreeSearchMemo& memo) {
  Key128 key = v.key();
  auto [max_infeasible, min_feasible] = memo.get(key);
  if (depth <= max_infeasible) return false;
  if (depth >= min_feasible) return true;

  if (diam_closed(diam_mu(v, cls).value, eps)) {
    memo.note_feasible(key, 0);
    return true;
  }
  if (depth == 0) {
    memo.note_infeasible(key, 0);
    return false;
  }

  for (std::size_t x : disagreement_region(v, cls)) {
    bool ok = true;
    for (Label y : {Label{+1}, Label{-1}}) {
      VersionSpace child = restrict(v, x, y, cls);
      if (child.empty()) continue;
      if (!separable_within(child, depth - 1, eps, cls, memo)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      memo.note_feasible(key, depth);
      return true;
    }
  }
  memo.note_infeasible(key, depth);
  return false;
}

}  // namespace

std::optional<int> tree_depth_bruteforce(const VersionSpace& v, double eps,
                                         const HypothesisClass& cls,
                                         int depth_cap) {
  if (v.empty()) {
    throw FaError(ErrorCode::kEmptyVersionSpace,
                  "tree_depth_bruteforce: empty version space");
  }
  TreeSearchMemo memo;
  for (int depth = 0; depth <= depth_cap; ++depth) {
    if (separable_within(v, depth, eps, cls, memo)) return depth;
  }
  return std::nullopt;
}

namespace {

// Coverage masks for the pair universe {(h1,h2): mu(h1) - mu(h2) > 2*eps}:
// example x covers a pair when h1 or h2 disagrees with the reference there.
// Many pairs share one mask, so masks are deduplicated before the dominance
// filter (a hit on a subset-mask implies a hit on every superset).
std::vector<Bitset> pair_cover_masks(const std::vector<Label>& reference,
                                     const HypothesisClass& cls, double eps) {
  const std::size_t m = cls.domain_size();
  std::vector<Bitset> diff(cls.size());  // disagreement with the reference
  for (std::size_t h = 0; h < cls.size(); ++h) {
    Bitset b(m);
    for (std::size_t x = 0; x < m; ++x) {
      if (cls.label(h, x) != reference[x]) b.set(x);
    }
    diff[h] = std::move(b);
  }
  std::unordered_map<Key128, std::size_t, Key128Hash> seen;
  std::vector<Bitset> masks;
  for (std::size_t h1 = 0; h1 < cls.size(); ++h1) {
    for (std::size_t h2 = 0; h2 < cls.size(); ++h2) {
      if (cls.mu_of(h1) - cls.mu_of(h2) <= 2.0 * eps + kMuTolerance) continue;
      Bitset mask = diff[h1];
      mask |= diff[h2];
      Key128 key = bitset_key(mask);
      auto [it, inserted] = seen.emplace(key, masks.size());
      if (inserted) {
        masks.push_back(std::move(mask));
      }
    }
  }
  std::vector<Bitset> minimal;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (j == i || !masks[j].is_subset_of(masks[i])) continue;
      // Distinct by construction, so any subset relation is strict.
      dominated = true;
      break;
    }
    if (!dominated) minimal.push_back(masks[i]);
  }
  return minimal;
}

bool covers_all(const Bitset& s, const std::vector<Bitset>& masks) {
  for (const Bitset& mask : masks) {
    if (!s.intersects(mask)) return false;
  }
  return true;
}

// Enumerate k-subsets of [0, m) in lexicographic order; returns false when
// the predicate never held.
template <typename Pred>
bool first_combination(std::size_t m, std::size_t k, Pred&& pred) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return false;
  while (true) {
    if (pred(idx)) return true;
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + m - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
    if (k == 0) return false;
  }
}

}  // namespace

std::vector<std::size_t> min_specifying_set(const std::vector<Label>& reference,
                                            const HypothesisClass& cls,
                                            double eps, SpecSetMode mode) {
  const std::size_t m = cls.domain_size();
  if (reference.size() != m) {
    throw FaError(ErrorCode::kInvalidInput,
                  "min_specifying_set: reference length mismatch");
  }
  std::vector<Bitset> masks = pair_cover_masks(reference, cls, eps);
  if (masks.empty()) return {};

  if (mode == SpecSetMode::kExact) {
    if (m > 20) {
      throw FaError(ErrorCode::kSizeLimit,
                    "min_specifying_set exact: domain larger than 20");
    }
    for (std::size_t k = 1; k <= m; ++k) {
      std::vector<std::size_t> found;
      bool ok = first_combination(m, k, [&](const std::vector<std::size_t>& idx) {
        Bitset s(m);
        for (std::size_t x : idx) s.set(x);
        if (covers_all(s, masks)) {
          found = idx;
          return true;
        }
        return false;
      });
      if (ok) return found;
    }
    // The whole domain always specifies: H(reference, X) has at most one
    // distinct labeling.
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    return all;
  }

  // Greedy pair cover: repeatedly take the example covering the most
  // still-uncovered pairs, smallest id on ties.
  std::vector<bool> covered(masks.size(), false);
  std::size_t remaining = masks.size();
  std::vector<std::size_t> chosen;
  while (remaining > 0) {
    std::size_t best_x = 0;
    std::size_t best_gain = 0;
    for (std::size_t x = 0; x < m; ++x) {
      std::size_t gain = 0;
      for (std::size_t p = 0; p < masks.size(); ++p) {
        if (!covered[p] && masks[p].test(x)) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_x = x;
      }
    }
    if (best_gain == 0) break;  // unreachable: X always covers
    chosen.push_back(best_x);
    for (std::size_t p = 0; p < masks.size(); ++p) {
      if (!covered[p] && masks[p].test(best_x)) {
        covered[p] = true;
        --remaining;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

int xtd(const HypothesisClass& cls, double eps) {
  const std::size_t m = cls.domain_size();
  if (m > 16) {
    throw FaError(ErrorCode::kSizeLimit, "xtd: domain larger than 16");
  }
  int worst = 0;
  std::vector<Label> labeling(m);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    for (std::size_t x = 0; x < m; ++x) {
      labeling[x] = (bits >> x) & 1 ? Label{+1} : Label{-1};
    }
    int t = static_cast<int>(
        min_specifying_set(labeling, cls, eps, SpecSetMode::kExact).size());
    worst = std::max(worst, t);
  }
  return worst;
}

}  // namespace fairaudit
