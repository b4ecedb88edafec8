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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pseudaudit/attribute.hpp"
#include "pseudaudit/cidr.hpp"
#include "pseudaudit/dump.hpp"

namespace pseudaudit::analytics {

/// Posts per address, nonincreasing; rank r is index r - 1.
struct RankCounts {
  std::vector<std::uint64_t> counts;

  static RankCounts from_assignments(std::span<const attribute::AssignmentRecord> records);
  static RankCounts from_truth(const GroundTruth& truth);
  std::uint64_t total() const noexcept;
};

/// Share of posts made by the top ceil(f * n) addresses. Throws UsageError
/// on empty counts or f outside (0, 1].
double concentration(const RankCounts& counts, double f);

/// log y(r) = a - b * r^c.
struct StretchedExpFit {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  std::size_t fit_ranks = 0;
  /// Residual sum of squares of log counts.
  double rss = 0.0;

  double log_count(double rank) const noexcept;
};

/// Least squares over ranks 1..R: (a, b) by linear regression on r^c at each
/// c, c by a grid then golden-section search over (0, 1]. Throws UsageError
/// when R < 3, R exceeds the data, or a count is not positive.
StretchedExpFit fit_stretched_exponential(std::span<const double> counts, std::size_t ranks);
StretchedExpFit fit_stretched_exponential(const RankCounts& counts, std::size_t ranks);

struct Extrapolation {
  /// Largest rank whose predicted count is at least 1.
  std::uint64_t n_star = 0;
  /// Sum of predicted counts over ranks 1..n_star.
  double total_posts = 0.0;
};

/// Throws DomainError unless b > 0 and 0 < c <= 1.
Extrapolation extrapolate_population(const StretchedExpFit& fit);

/// Labelled CIDR ranges; nesting is allowed and lookup takes the longest
/// prefix.
class LabelTable {
 public:
  /// Throws ConfigError when the same range gets two labels.
  void add(const CidrRange& range, std::string label);
  /// Empty when unlabeled.
  std::string lookup(Address a) const;
  std::size_t size() const noexcept { return entries_.size(); }

  /// CSV `cidr,label`. Throws ParseError with the line.
  static LabelTable load(const std::filesystem::path& path);
  static LabelTable from(std::span<const std::pair<CidrRange, std::string>> entries);

 private:
  std::map<std::pair<int, std::uint32_t>, std::string> entries_;  // (prefix, base)
  std::vector<int> prefixes_;                                      // descending
};

inline constexpr const char* kUnlabeled = "unlabeled";

struct LabelShare {
  std::string label;
  std::uint64_t posts = 0;
  double share = 0.0;
};

/// One row per label seen, plus kUnlabeled when used; sorted by label.
std::vector<LabelShare> label_aggregate(std::span<const attribute::AssignmentRecord> records,
                                        const LabelTable& labels);

struct YearProfile {
  int year = 0;
  /// Local calendar days from the year's first to last post, inclusive.
  std::int64_t days = 0;
  /// Posts per minute in each bucket, averaged over `days`.
  std::vector<double> per_minute;
};

/// Time-of-day profile per local year. Throws UsageError unless
/// bucket_minutes divides 1440.
std::vector<YearProfile> time_profile(std::span<const std::int64_t> timestamps, int bucket_minutes,
                                      int utc_offset_minutes = 0);

}  // namespace pseudaudit::analytics
