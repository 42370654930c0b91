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

#ifndef FAIRAUDIT_VERSION_SPACE_HPP_
#define FAIRAUDIT_VERSION_SPACE_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "fairaudit/bitset.hpp"
#include "fairaudit/domain.hpp"

namespace fairaudit {

/// The subset of the class consistent with the labels seen so far, as a
/// bitmask over hypothesis indices.
class VersionSpace {
 public:
  VersionSpace() = default;
  static VersionSpace full(const HypothesisClass& cls);
  static VersionSpace of(std::size_t class_size,
                         const std::vector<std::size_t>& members);

  const Bitset& members() const { return members_; }
  std::size_t count() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  bool contains(std::size_t h) const { return members_.test(h); }
  std::vector<std::size_t> member_indices() const { return members_.indices(); }
  Key128 key() const { return bitset_key(members_); }
  bool is_subset_of(const VersionSpace& other) const {
    return members_.is_subset_of(other.members_);
  }
  bool operator==(const VersionSpace& o) const { return members_ == o.members_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    members_.for_each(std::forward<Fn>(fn));
  }

 private:
  explicit VersionSpace(Bitset members) : members_(std::move(members)) {}
  Bitset members_;
};

struct DiamResult {
  double value = 0.0;
  std::size_t argmax = 0;  // hypothesis index attaining the max mu
  std::size_t argmin = 0;  // hypothesis index attaining the min mu
};

/// Max-minus-min demographic parity over the version space, with the
/// extremal pair. Ties broken by smallest hypothesis index.
DiamResult diam_mu(const VersionSpace& v, const HypothesisClass& cls);

/// Keep exactly the members labeling `x` as `y`. Empty results are legal.
VersionSpace restrict(const VersionSpace& v, std::size_t x, Label y,
                      const HypothesisClass& cls);

/// Fold of restrict over the transcript, starting from the full class.
VersionSpace version_space(const HypothesisClass& cls, const Transcript& t);

/// Example ids on which at least two members disagree.
std::vector<std::size_t> disagreement_region(const VersionSpace& v,
                                             const HypothesisClass& cls);

/// Same set as a bitmask over example ids.
Bitset disagreement_mask(const VersionSpace& v, const HypothesisClass& cls);

}  // namespace fairaudit

#endif  // FAIRAUDIT_VERSION_SPACE_HPP_
