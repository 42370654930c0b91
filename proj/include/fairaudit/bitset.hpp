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

#ifndef FAIRAUDIT_BITSET_HPP_
#define FAIRAUDIT_BITSET_HPP_

#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fairaudit {

/// Fixed-capacity bit vector used for version-space membership and pair
/// coverage masks. Unused tail bits are kept zero so equality and hashing
/// can work directly on the words.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size, bool all_set = false);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const;
  bool any() const;
  bool none() const { return !any(); }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const;

  Bitset& operator&=(const Bitset& other);
  Bitset& operator|=(const Bitset& other);
  bool intersects(const Bitset& other) const;
  bool is_subset_of(const Bitset& other) const;

  bool operator==(const Bitset& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }
  bool operator!=(const Bitset& other) const { return !(*this == other); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        unsigned tz = static_cast<unsigned>(__builtin_ctzll(bits));
        fn(w * 64 + tz);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// 128-bit content key; stable across runs and processes, used to memoize
/// version spaces and to address persisted cost-cache entries.
struct Key128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  bool operator==(const Key128& o) const { return hi == o.hi && lo == o.lo; }
  std::string hex() const;
};

struct Key128Hash {
  std::size_t operator()(const Key128& k) const {
    return static_cast<std::size_t>(k.hi ^ (k.lo * 0x9e3779b97f4a7c15ull));
  }
};

Key128 hash_words(const std::vector<std::uint64_t>& words);
inline Key128 bitset_key(const Bitset& b) { return hash_words(b.words()); }

/// FNV-1a over raw bytes; used for class-file content hashes.
std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace fairaudit

#endif  // FAIRAUDIT_BITSET_HPP_
