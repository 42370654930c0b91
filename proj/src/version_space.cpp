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

#include "fairaudit/version_space.hpp"

namespace fairaudit {

VersionSpace VersionSpace::full(const HypothesisClass& cls) {
  return VersionSpace(Bitset(cls.size(), /*all_set=*/true));
}

VersionSpace VersionSpace::of(std::size_t class_size,
                              const std::vector<std::size_t>& members) {
  Bitset b(class_size);
  for (std::size_t m : members) b.set(m);
  return VersionSpace(b);
}

DiamResult diam_mu(const VersionSpace& v, const HypothesisClass& cls) {
  if (v.empty()) {
    throw FaError(ErrorCode::kEmptyVersionSpace, "diam_mu: empty version space");
  }
  DiamResult r;
  bool first = true;
  double lo = 0.0, hi = 0.0;
  v.for_each([&](std::size_t h) {
    double m = cls.mu_of(h);
    if (first) {
      lo = hi = m;
      r.argmax = r.argmin = h;
      first = false;
      return;
    }
    if (m > hi) {
      hi = m;
      r.argmax = h;
    }
    if (m < lo) {
      lo = m;
      r.argmin = h;
    }
  });
  r.value = hi - lo;
  return r;
}

VersionSpace restrict(const VersionSpace& v, std::size_t x, Label y,
                      const HypothesisClass& cls) {
  if (x >= cls.domain_size()) {
    throw FaError(ErrorCode::kInvalidInput,
                  "restrict: example id out of range");
  }
  std::vector<std::size_t> kept;
  v.for_each([&](std::size_t h) {
    if (cls.label(h, x) == y) kept.push_back(h);
  });
  return VersionSpace::of(cls.size(), kept);
}

VersionSpace version_space(const HypothesisClass& cls, const Transcript& t) {
  VersionSpace v = VersionSpace::full(cls);
  for (const auto& [x, y] : t.entries()) {
    v = restrict(v, static_cast<std::size_t>(x), y, cls);
  }
  return v;
}

std::vector<std::size_t> disagreement_region(const VersionSpace& v,
                                             const HypothesisClass& cls) {
  return disagreement_mask(v, cls).indices();
}

Bitset disagreement_mask(const VersionSpace& v, const HypothesisClass& cls) {
  if (v.empty()) {
    throw FaError(ErrorCode::kEmptyVersionSpace,
                  "disagreement_region: empty version space");
  }
  Bitset out(cls.domain_size());
  std::size_t ref = v.members().first();
  v.for_each([&](std::size_t h) {
    if (h == ref) return;
    for (std::size_t x = 0; x < cls.domain_size(); ++x) {
      if (!out.test(x) && cls.label(h, x) != cls.label(ref, x)) out.set(x);
    }
  });
  return out;
}

}  // namespace fairaudit
