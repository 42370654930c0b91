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

#ifndef FAIRAUDIT_RNG_HPP_
#define FAIRAUDIT_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fairaudit {

/// Deterministic random source. The engine is the standardized mt19937_64;
/// all variate transforms are implemented here rather than via std
/// distributions, whose outputs vary between standard libraries. Runs are
/// bit-reproducible for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as the argument of a logarithm.
  double uniform01_open_left() { return 1.0 - uniform01(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling over the top bits keeps the draw unbiased.
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t v;
    do {
      v = engine_() & mask;
    } while (v >= n);
    return v;
  }

  /// Standard normal via Box-Muller; one spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01_open_left();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Exponential with the given rate (survival exp(-rate * t)).
  double exponential(double rate) {
    return -std::log(uniform01_open_left()) / rate;
  }

  /// Child seed derived from this stream; used to give parallel experiment
  /// cells independent deterministic streams.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull * (salt + 1));
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  static std::uint64_t derive(std::uint64_t seed, const std::string& salt) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : salt) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return derive(seed, h);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Draw an index from a discrete distribution given its cumulative masses
/// (last entry ~ 1). Deterministic given the rng stream.
std::size_t sample_cumulative(const std::vector<double>& cumulative, Rng& rng);

/// Cumulative masses of a domain's conditional or marginal distributions.
struct DiscreteSampler {
  std::vector<double> cumulative;
  std::vector<std::size_t> ids;

  std::size_t draw(Rng& rng) const {
    return ids[sample_cumulative(cumulative, rng)];
  }
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_RNG_HPP_
