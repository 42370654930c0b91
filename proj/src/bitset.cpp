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

#include "fairaudit/bitset.hpp"

#include <cstdio>

namespace fairaudit {

Bitset::Bitset(std::size_t size, bool all_set)
    : size_(size), words_((size + 63) / 64, 0) {
  if (all_set) {
    for (auto& w : words_) w = ~std::uint64_t{0};
    if (size_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
  }
}

std::size_t Bitset::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

bool Bitset::any() const {
  for (auto w : words_) {
    if (w) return true;
  }
  return false;
}

std::size_t Bitset::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) {
      return i * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[i]));
    }
  }
  return size_;
}

Bitset& Bitset::operator&=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool Bitset::intersects(const Bitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

bool Bitset::is_subset_of(const Bitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::string Key128::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return std::string(buf);
}

namespace {

// splitmix64 finalizer; good avalanche, stable across platforms.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

Key128 hash_words(const std::vector<std::uint64_t>& words) {
  std::uint64_t a = 0x6a09e667f3bcc908ull;
  std::uint64_t b = 0xbb67ae8584caa73bull;
  for (std::size_t i = 0; i < words.size(); ++i) {
    a = mix(a ^ words[i] ^ (i * 0x2545f4914f6cdd1dull));
    b = mix(b + words[i] + a);
  }
  return Key128{a, b};
}

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace fairaudit
