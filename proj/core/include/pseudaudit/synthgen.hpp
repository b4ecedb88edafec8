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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pseudaudit/cidr.hpp"
#include "pseudaudit/dump.hpp"
#include "pseudaudit/random.hpp"
#include "pseudaudit/scheme.hpp"

namespace pseudaudit::synthgen {

/// Relative posting weight by activity rank (rank 1 is the most active).
struct ActivityLaw {
  enum class Kind { uniform, stretched_exponential };
  Kind kind = Kind::stretched_exponential;
  // log weight(r) = a - b * r^c
  double a = 0.0;
  double b = 0.35;
  double c = 0.5;

  double weight(std::uint64_t rank) const noexcept;
  /// Throws ConfigError unless every weight for ranks 1..n is positive and
  /// finite.
  void validate(std::size_t n) const;
};

/// exp(a - b r^c) for r = 1..n (all ones for the uniform law).
std::vector<double> expected_counts(const ActivityLaw& law, std::size_t n);

/// One address sampling range. `label` marks planted blocks for the
/// label-aggregation analytics; empty means unlabeled.
struct PoolRange {
  CidrRange range;
  double weight = 1.0;
  std::string label;
};

struct PopulationModel {
  std::size_t n_addresses = 300;
  ActivityLaw activity;
  /// Empty means the whole configured address space.
  std::vector<PoolRange> pool;
  std::vector<CidrRange> bogons = default_bogons();
  /// Per-day probability that an active address is retired and replaced.
  double churn_rate = 0.0;

  void validate() const;
};

/// offset + X where X is constant(mean), Poisson(mean) or geometric(mean).
/// Text form: "[offset+]kind(mean)", e.g. "1+poisson(4)".
struct DrawLaw {
  enum class Kind { constant, poisson, geometric };
  Kind kind = Kind::poisson;
  double mean = 0.0;
  std::uint64_t offset = 0;

  std::uint64_t draw(SplitMix64& rng) const noexcept;
  double expected() const noexcept { return static_cast<double>(offset) + mean; }
  void validate(std::string_view name) const;

  static DrawLaw parse(std::string_view text);
  std::string to_string() const;
};

struct ForumConfig {
  scheme::SchemeConfig scheme;
  scheme::Date start{std::chrono::days{0}};
  int days = 60;
  DrawLaw topics_per_day;
  DrawLaw posts_per_topic;
  /// Mean gap between consecutive posts of one topic.
  double reply_gap_minutes = 120.0;
  /// Relative topic-creation intensity per UTC hour; empty means uniform.
  std::vector<double> hour_weights;
  /// Slice regimes; must cover [start, last_day()]. Empty means a single
  /// regime at scheme.slice_start.
  scheme::SliceRegime regimes;
  std::uint64_t seed = 1;
  std::uint64_t first_topic_id = 1;
  std::uint64_t first_post_id = 1;

  scheme::Date last_day() const noexcept { return start + std::chrono::days{days - 1}; }
  /// `regimes`, or the single-regime default when it is empty.
  scheme::SliceRegime effective_regimes() const;
  void validate() const;
};

/// A=24 under 172.0.0.0/8, 60 days from 2013-06-08, about 500 topics, a
/// regime switch from slice 8 to slice 9 on day 30 (2013-07-08).
ForumConfig default_forum();
/// 300 addresses with a stretched-exponential activity law.
PopulationModel default_population();

/// Splits the regime table at `switch_date`, decrementing slice_start for
/// every date before it. A switch on the first day changes nothing. Throws
/// RangeError when the date is outside the forum span.
ForumConfig inject_regime_switch(ForumConfig forum, scheme::Date switch_date);

struct Forum {
  Dump dump;
  GroundTruth truth;
  /// Every address ever used, in the order it entered the population.
  std::vector<Address> addresses;
};

/// Draw order, for reproducibility. The seed is split into four streams:
///   1  addresses: the initial population by slot, then replacements;
///   2  topics: per day, a topic count, then one creation time per topic
///      (an hour by weight, then a second within the hour);
///   3  posts: per topic in creation order, a post count, then per post a
///      gap (all but the first) and an activity slot, redrawn while the
///      slot's address collides in username with a different earlier poster
///      of the topic;
///   4  churn: per day after the first, one uniform per slot.
/// A reply that would land after the last day ends its topic. Topics drawn
/// with zero posts get no id; ids follow creation order and post ids follow
/// (timestamp, generation order).
Forum generate(const PopulationModel& population, const ForumConfig& forum);

/// CIDR blocks with a non-empty label.
std::vector<std::pair<CidrRange, std::string>> planted_labels(const PopulationModel& population);

/// Keeps each post's exact timestamp with probability `fraction`; the first
/// and last posts are always kept when the dump is non-empty.
std::vector<std::pair<std::uint64_t, std::int64_t>> sample_anchors(const Dump& dump, double fraction,
                                                                   std::uint64_t seed);

}  // namespace pseudaudit::synthgen
