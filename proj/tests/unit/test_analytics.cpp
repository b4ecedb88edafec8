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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "pseudaudit/analytics.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/random.hpp"
#include "pseudaudit/synthgen.hpp"

namespace pseudaudit::analytics {
namespace {

using attribute::AssignmentRecord;

Address ip(std::string_view s) { return *parse_dotted(s); }

TEST(Concentration, Examples) {
  const RankCounts rc{{50, 30, 20}};
  EXPECT_DOUBLE_EQ(concentration(rc, 1.0 / 3.0), 0.5);
  EXPECT_DOUBLE_EQ(concentration(rc, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(concentration(rc, 0.5), 0.8);
  EXPECT_THROW(concentration(RankCounts{}, 0.5), UsageError);
  EXPECT_THROW(concentration(rc, 0.0), UsageError);
  EXPECT_THROW(concentration(rc, 1.5), UsageError);
}

TEST(Concentration, SyntheticForumMatchesGroundTruth) {
  const auto forum = synthgen::generate(synthgen::default_population(), synthgen::default_forum());
  const RankCounts rc = RankCounts::from_truth(forum.truth);
  ASSERT_TRUE(std::is_sorted(rc.counts.rbegin(), rc.counts.rend()));
  EXPECT_EQ(rc.total(), forum.dump.size());

  std::map<std::uint32_t, std::uint64_t> per;
  for (const auto& [id, a] : forum.truth.rows()) ++per[a.value];
  std::vector<std::uint64_t> v;
  for (const auto& [a, c] : per) v.push_back(c);
  std::sort(v.begin(), v.end(), std::greater<>());
  double prev = 0;
  for (double f : {0.01, 0.05, 0.1, 0.25, 0.5, 1.0}) {
    const auto top = static_cast<std::size_t>(std::ceil(f * static_cast<double>(v.size()) - 1e-9));
    std::uint64_t head = 0;
    for (std::size_t i = 0; i < top; ++i) head += v[i];
    const double share = concentration(rc, f);
    EXPECT_DOUBLE_EQ(share, static_cast<double>(head) / static_cast<double>(forum.dump.size()));
    EXPECT_GE(share, prev);
    prev = share;
  }
  EXPECT_EQ(prev, 1.0);
}

TEST(StretchedExp, ExactModelRecovery) {
  synthgen::ActivityLaw law;
  law.a = 10.0;
  law.b = 0.5;
  law.c = 0.4;
  const auto counts = synthgen::expected_counts(law, 1788);
  const StretchedExpFit fit = fit_stretched_exponential(counts, 1000);
  EXPECT_NEAR(fit.a, 10.0, 1e-6);
  EXPECT_NEAR(fit.b, 0.5, 1e-6);
  EXPECT_NEAR(fit.c, 0.4, 1e-6);
  EXPECT_LT(fit.rss, 1e-9);
  const Extrapolation e = extrapolate_population(fit);
  EXPECT_EQ(e.n_star, 1788u);
  EXPECT_GT(e.total_posts, 0.0);
}

TEST(StretchedExp, PureExponentialBoundary) {
  std::vector<double> counts;
  for (int r = 1; r <= 200; ++r) counts.push_back(std::exp(6.0 - 0.02 * r));
  const StretchedExpFit fit = fit_stretched_exponential(counts, 200);
  EXPECT_NEAR(fit.c, 1.0, 1e-3);
  EXPECT_NEAR(fit.b, 0.02, 1e-6);
}

TEST(StretchedExp, SampledCountsExtrapolateWithinFivePercent) {
  synthgen::ActivityLaw law;
  law.a = 10.0;
  law.b = 0.5;
  law.c = 0.4;
  const auto mean = synthgen::expected_counts(law, 1788);
  SplitMix64 rng(2024);
  std::vector<double> drawn;
  for (double m : mean)
    if (const auto k = rng.poisson(m); k > 0) drawn.push_back(static_cast<double>(k));
  std::sort(drawn.begin(), drawn.end(), std::greater<>());
  const Extrapolation e = extrapolate_population(fit_stretched_exponential(drawn, 1000));
  EXPECT_NEAR(static_cast<double>(e.n_star), 1788.0, 0.05 * 1788.0);
}

TEST(StretchedExp, Preconditions) {
  const std::vector<double> two{5, 3};
  EXPECT_THROW(fit_stretched_exponential(two, 2), UsageError);
  const std::vector<double> bad{5, 0, 1, 1};
  EXPECT_THROW(fit_stretched_exponential(bad, 4), UsageError);
  EXPECT_THROW(fit_stretched_exponential(bad, 9), UsageError);
}

TEST(Extrapolate, BoundaryAndMonotonicity) {
  EXPECT_EQ(extrapolate_population({2.0, 2.0, 0.5, 10, 0}).n_star, 1u);
  EXPECT_DOUBLE_EQ(extrapolate_population({2.0, 2.0, 0.5, 10, 0}).total_posts, 1.0);
  EXPECT_EQ(extrapolate_population({1.0, 2.0, 0.5, 10, 0}).n_star, 0u);
  std::uint64_t prev = 0;
  for (double a = 3.0; a < 12.0; a += 0.5) {
    const auto n = extrapolate_population({a, 0.5, 0.4, 10, 0}).n_star;
    EXPECT_GT(n, prev);
    prev = n;
  }
  EXPECT_THROW(extrapolate_population({5.0, 0.0, 0.5, 10, 0}), DomainError);
  EXPECT_THROW(extrapolate_population({5.0, 1.0, 1.5, 10, 0}), DomainError);
}

TEST(LabelTable, LongestPrefix) {
  LabelTable t;
  t.add(CidrRange::parse("10.0.0.0/8"), "isp");
  t.add(CidrRange::parse("10.5.0.0/16"), "university");
  EXPECT_EQ(t.lookup(ip("10.5.1.1")), "university");
  EXPECT_EQ(t.lookup(ip("10.6.1.1")), "isp");
  EXPECT_EQ(t.lookup(ip("11.0.0.1")), "");
  EXPECT_THROW(t.add(CidrRange::parse("10.0.0.0/8"), "other"), ConfigError);

  const std::vector<AssignmentRecord> r{{1, ip("10.5.1.1"), -30, attribute::WindowKind::d7, 9},
                                        {2, ip("10.6.1.1"), -30, attribute::WindowKind::d7, 9},
                                        {3, ip("10.5.9.9"), -30, attribute::WindowKind::d7, 9},
                                        {4, ip("8.8.8.8"), -30, attribute::WindowKind::d7, 9}};
  const auto agg = label_aggregate(r, t);
  ASSERT_EQ(agg.size(), 3u);
  EXPECT_EQ(agg[0].label, "isp");
  EXPECT_EQ(agg[1].label, "university");
  EXPECT_EQ(agg[1].posts, 2u);
  EXPECT_DOUBLE_EQ(agg[1].share, 0.5);
  EXPECT_EQ(agg[2].label, kUnlabeled);
}

TEST(LabelTable, LoadReportsLine) {
  const auto dir = std::filesystem::temp_directory_path() / "pseudaudit_labels";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "ok.csv") << "cidr,label\n10.0.0.0/8,a\n";
  EXPECT_EQ(LabelTable::load(dir / "ok.csv").size(), 1u);
  std::ofstream(dir / "bad.csv") << "cidr,label\n10.0.0.0/8,a\n10.0.0.1/8,b\n";
  try {
    LabelTable::load(dir / "bad.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
}

TEST(LabelAggregate, PlantedBlocksMatchGroundTruth) {
  synthgen::PopulationModel pop;
  pop.n_addresses = 120;
  pop.pool = {{CidrRange::parse("172.16.0.0/12"), 1.0, ""},  // bogon, rejected by the sampler
              {CidrRange::parse("172.40.0.0/16"), 2.0, "uni-a"},
              {CidrRange::parse("172.41.0.0/16"), 1.0, "isp-b"},
              {CidrRange::parse("172.80.0.0/13"), 3.0, ""}};
  const auto forum = synthgen::generate(pop, synthgen::default_forum());
  const LabelTable t = LabelTable::from(synthgen::planted_labels(pop));
  std::vector<AssignmentRecord> r;
  std::map<std::string, std::uint64_t> expect;
  for (const auto& [id, a] : forum.truth.rows()) {
    r.push_back({id, a, -30, attribute::WindowKind::d7, 9});
    const std::uint32_t s16 = a.value >> 16;
    ++expect[s16 == 0xac28 ? "uni-a" : s16 == 0xac29 ? "isp-b" : kUnlabeled];
  }
  std::uint64_t sum = 0;
  for (const auto& row : label_aggregate(r, t)) {
    EXPECT_EQ(row.posts, expect[row.label]) << row.label;
    sum += row.posts;
  }
  EXPECT_EQ(sum, r.size());
}

TEST(TimeProfile, NoonSpikeAndRotation) {
  std::vector<std::int64_t> noon;
  for (int d = 0; d < 10; ++d) noon.push_back(1370649600 + d * 86400 + 12 * 3600);
  const auto p = time_profile(noon, 60);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].year, 2013);
  EXPECT_EQ(p[0].days, 10);
  for (int b = 0; b < 24; ++b) EXPECT_DOUBLE_EQ(p[0].per_minute[b], b == 12 ? 1.0 / 60.0 : 0.0);

  std::vector<std::int64_t> mixed;
  SplitMix64 rng(4);
  for (int i = 0; i < 5000; ++i) mixed.push_back(1370649600 + static_cast<std::int64_t>(rng.below(20 * 86400)) + 3600);
  const auto base = time_profile(mixed, 30);
  const auto shifted = time_profile(mixed, 30, 90);
  ASSERT_EQ(base.size(), 1u);
  // Shifting by three buckets rotates the profile when the day span is unchanged.
  if (base[0].days == shifted[0].days) {
    for (int b = 0; b < 48; ++b) EXPECT_DOUBLE_EQ(shifted[0].per_minute[(b + 3) % 48], base[0].per_minute[b]);
  }
  EXPECT_THROW(time_profile(mixed, 7), UsageError);
}

TEST(TimeProfile, UniformIntensityIsFlat) {
  std::vector<std::int64_t> t;
  SplitMix64 rng(9);
  for (int i = 0; i < 200000; ++i) t.push_back(1370649600 + static_cast<std::int64_t>(rng.below(60 * 86400)));
  const auto p = time_profile(t, 60);
  const double expect = 200000.0 / (60.0 * 1440.0);
  for (double v : p[0].per_minute) EXPECT_NEAR(v, expect, 5 * std::sqrt(expect / 3600.0));
}

}  // namespace
}  // namespace pseudaudit::analytics
