// Copyright 2026 The pseudaudit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace pseudaudit {

/// SplitMix64 (Steele, Lea and Flood). Small, seedable and splittable: a
/// child stream is a fresh generator whose seed is mixed from the parent's
/// seed and a stream label, so child sequences do not depend on how many
/// values the parent has produced.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    return mix(z);
  }

  SplitMix64 split(std::uint64_t stream) const noexcept {
    return SplitMix64(mix(seed_ ^ mix(stream + 0x632be59bd9b4e019ull)));
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next();
      if (x >= limit) return x % n;
    }
  }

  /// Exponential with the given mean.
  double exponential(double mean) noexcept { return -mean * std::log1p(-uniform()); }

  /// Poisson by inversion; means above 30 are split into halves so the
  /// inversion never starts from an underflowing exp(-mean).
  std::uint64_t poisson(double mean) noexcept {
    if (mean <= 0.0) return 0;
    if (mean > 30.0) return poisson(mean / 2.0) + poisson(mean / 2.0);
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && k < 1000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

  /// Number of failures before the first success, with the given mean.
  std::uint64_t geometric(double mean) noexcept {
    if (mean <= 0.0) return 0;
    const double p = 1.0 / (1.0 + mean);
    return static_cast<std::uint64_t>(std::floor(std::log1p(-uniform()) / std::log1p(-p)));
  }

  /// Index drawn with probability proportional to `cumulative` increments;
  /// `cumulative` is an inclusive prefix sum with a positive last element.
  std::size_t discrete(std::span<const double> cumulative) noexcept {
    const double x = uniform() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (x < cumulative[mid])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace pseudaudit
