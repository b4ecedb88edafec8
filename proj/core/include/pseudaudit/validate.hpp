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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudaudit/attribute.hpp"
#include "pseudaudit/cidr.hpp"
#include "pseudaudit/dump.hpp"

namespace pseudaudit::validate {

/// Number of records whose address lies in `bogons`.
std::size_t bogon_check(std::span<const attribute::AssignmentRecord> assignments, const CidrSet& bogons);

struct Chi2Result {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  /// Natural log of p_value; finite even where p_value underflows to 0.
  double log_p_value = 0.0;

  bool rejects(double alpha) const noexcept { return log_p_value < std::log(alpha); }
};

/// Pearson chi-squared against the uniform distribution over the cells.
/// Throws UsageError unless there are at least 2 cells and the total is at
/// least 5 per cell.
Chi2Result uniformity_chi2(std::span<const std::uint64_t> histogram);

/// log Q(a, x), the regularized upper incomplete gamma, without underflow.
double log_gamma_q(double a, double x);

inline constexpr int kHeavyTopicsPerWeek = 12;

/// Addresses with at least `min_topics` distinct topics among their posts in
/// some window of 7 consecutive days. Sorted.
std::vector<Address> heavy_posters(const Dump& dump, const GroundTruth& truth,
                                   int min_topics = kHeavyTopicsPerWeek);

struct ScoreReport {
  std::size_t posts = 0;
  std::size_t assigned = 0;
  std::size_t correct = 0;
  /// Wrong address that does post somewhere in the dump.
  std::size_t stolen = 0;
  /// Absent when nothing was assigned.
  std::optional<double> precision;
  double recall = 0.0;
  std::optional<double> stealing_rate;

  std::size_t heavy_addresses = 0;
  std::size_t heavy_posts = 0;
  std::size_t heavy_correct = 0;
  /// Correctly assigned share of all posts by heavy posters; 1 when there
  /// are none.
  double heavy_recall = 1.0;
  /// Heavy posters with at least one correctly assigned post.
  std::size_t heavy_identified = 0;
};

/// Throws DataError when an assigned post or a dump post has no ground truth.
ScoreReport score(std::span<const attribute::AssignmentRecord> assignments, const Dump& dump,
                  const GroundTruth& truth);

std::string to_json(const ScoreReport& report);

}  // namespace pseudaudit::validate
