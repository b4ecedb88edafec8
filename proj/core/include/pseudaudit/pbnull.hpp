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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pseudaudit::pbnull {

/// Probability that a uniformly random address falls in the union of the
/// candidate sets of k distinct usernames out of 2^U, i.e.
/// 1 - C(2^U - 1, k) / C(2^U, k), which simplifies to k / 2^U. Exact in
/// double for U <= 52. Throws DomainError unless 1 <= k <= 2^U.
double match_prob(std::uint64_t k, int username_bits);

/// The k_t values (distinct usernames per topic) of one window.
struct TopicLoad {
  int username_bits = 16;
  std::vector<std::uint64_t> k;

  /// Throws DomainError when a k is out of [1, 2^U].
  void validate() const;
  /// Hex SHA-1 of the sorted k values, for audit records.
  std::string digest() const;
};

/// Convolution of Bernoulli(q(k_t)) over a window's topics, truncated at
/// c_max with the excess mass kept separately. All values are natural logs.
class NullTable {
 public:
  NullTable() = default;
  NullTable(std::vector<double> log_pmf, double log_remainder);

  std::size_t c_max() const noexcept { return log_pmf_.empty() ? 0 : log_pmf_.size() - 1; }
  const std::vector<double>& log_pmf() const noexcept { return log_pmf_; }
  /// log Pr(N >= n) for n in [0, c_max].
  const std::vector<double>& log_survival() const noexcept { return log_survival_; }
  /// log Pr(N > c_max).
  double log_remainder() const noexcept { return log_remainder_; }

  /// log Pr(N >= n); beyond c_max, the remainder (an upper bound).
  double log_survival(std::uint64_t n) const noexcept {
    return n < log_survival_.size() ? log_survival_[n] : log_remainder_;
  }

  std::string window_id;
  std::string loads_digest;

 private:
  std::vector<double> log_pmf_;
  std::vector<double> log_survival_;
  double log_remainder_ = 0.0;
};

enum class Route {
  /// Topic by topic, O(T * c_max).
  bernoulli,
  /// Grouped by distinct k, one binomial per group.
  grouped,
};

/// Throws UsageError when c_max < 1, DomainError on an invalid load.
NullTable window_pmf(const TopicLoad& loads, std::size_t c_max, Route route = Route::bernoulli);

inline double log_survival(const NullTable& table, std::uint64_t n) noexcept { return table.log_survival(n); }

/// 4 * max_observed + 64.
std::size_t default_c_max(std::uint64_t max_observed) noexcept;

/// JSON object with window_id, loads_digest, c_max, log_remainder and the
/// log-survival array.
std::string to_json(const NullTable& table);

/// Numerically stable log(exp(a) + exp(b)).
double log_add(double a, double b) noexcept;

}  // namespace pseudaudit::pbnull
