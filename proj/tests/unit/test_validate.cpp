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
#include <random>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pseudaudit/enumerate.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/validate.hpp"

namespace pseudaudit::validate {
namespace {

using attribute::AssignmentRecord;
using attribute::WindowKind;

Address ip(std::string_view s) { return *parse_dotted(s); }

AssignmentRecord rec(std::uint64_t post, Address a) { return {post, a, -30.0, WindowKind::d7, 9}; }

TEST(BogonCheck, CountsContainedAddresses) {
  const CidrSet bogons(parse_cidr_list("10.0.0.0/8\n192.168.0.0/16\n"));
  const std::vector<AssignmentRecord> r{rec(1, ip("10.1.2.3")), rec(2, ip("11.0.0.1")), rec(3, ip("192.168.4.4"))};
  EXPECT_EQ(bogon_check(r, bogons), 2u);
  EXPECT_EQ(bogon_check({}, bogons), 0u);
}

TEST(BogonCheck, UniformSampleMatchesCoverage) {
  const CidrSet bogons(default_bogons());
  std::mt19937 rng(138);
  std::vector<AssignmentRecord> r;
  for (std::uint64_t i = 0; i < 400000; ++i) r.push_back(rec(i, Address{static_cast<std::uint32_t>(rng())}));
  const double share = static_cast<double>(bogon_check(r, bogons)) / static_cast<double>(r.size());
  EXPECT_NEAR(share, 0.138, 0.003);
}

TEST(LogGammaQ, MatchesMultiprecisionOracle) {
  using big = boost::multiprecision::cpp_bin_float_50;
  for (double a : {0.5, 1.0, 2.5, 40.0, 32767.5}) {
    for (double ratio : {0.1, 0.9, 1.0, 1.1, 1.5, 3.0, 10.0}) {
      const double x = a * ratio;
      const big q = boost::math::gamma_q(big(a), big(x));
      const double expect = static_cast<double>(log(q));
      EXPECT_NEAR(log_gamma_q(a, x), expect, 1e-9 * std::max(1.0, std::abs(expect))) << a << " " << x;
    }
  }
}

TEST(UniformityChi2, KnownSmallCase) {
  const std::vector<std::uint64_t> h{60, 40};
  const Chi2Result r = uniformity_chi2(h);
  EXPECT_DOUBLE_EQ(r.statistic, 4.0);
  EXPECT_EQ(r.degrees_of_freedom, 1.0);
  EXPECT_NEAR(r.p_value, 0.04550026389635842, 1e-12);
  EXPECT_TRUE(r.rejects(0.05));
  EXPECT_FALSE(r.rejects(0.01));
}

TEST(UniformityChi2, FlatHistogramHasPValueOne) {
  const std::vector<std::uint64_t> h(4096, 7);
  const Chi2Result r = uniformity_chi2(h);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(UniformityChi2, DegenerateRejectsWithFiniteLog) {
  std::vector<std::uint64_t> h(65536, 0);
  h[3] = 5 * 65536;
  const Chi2Result r = uniformity_chi2(h);
  EXPECT_LT(r.p_value, 1e-300);
  EXPECT_TRUE(std::isfinite(r.log_p_value));
  EXPECT_LT(r.log_p_value, std::log(1e-300));
  EXPECT_TRUE(r.rejects(0.01));
}

TEST(UniformityChi2, UndersizedSampleIsRejected) {
  const std::vector<std::uint64_t> h(100, 4);
  EXPECT_THROW(uniformity_chi2(h), UsageError);
  EXPECT_THROW(uniformity_chi2(std::vector<std::uint64_t>{50}), UsageError);
}

TEST(UniformityChi2, TrueSchemeVersusNonAvalanchingControls) {
  scheme::SchemeConfig c;
  c.address_space_bits = 20;
  c.high_octet = 172;
  c.username_len = 3;
  const auto good = uniformity_chi2(enumerate::username_histogram(TopicId{227259}, c));
  EXPECT_FALSE(good.rejects(0.01)) << good.statistic;
  for (HashAlgorithm bad : {HashAlgorithm::first_letter, HashAlgorithm::byte_sum}) {
    c.hash = bad;
    c.slice_start = 0;
    EXPECT_TRUE(uniformity_chi2(enumerate::username_histogram(TopicId{227259}, c)).rejects(0.01));
  }
}

Dump week_of_topics(Address a, int topics, std::uint64_t first_post, GroundTruth& truth) {
  Dump d;
  std::vector<std::pair<std::uint64_t, Address>> rows(truth.rows());
  for (int i = 0; i < topics; ++i) {
    const std::uint64_t id = first_post + static_cast<std::uint64_t>(i);
    d.push_back({id, TopicId{1000 + static_cast<std::uint64_t>(i)}, Username::parse("abcd"),
                 1370649600 + static_cast<std::int64_t>(i % 7) * 86400});
    rows.emplace_back(id, a);
  }
  truth = GroundTruth(rows);
  return d;
}

TEST(HeavyPosters, TwelveTopicsInSevenDays) {
  GroundTruth truth;
  Dump dump = week_of_topics(ip("172.0.0.1"), 12, 1, truth);
  const Dump light = week_of_topics(ip("172.0.0.2"), 11, 100, truth);
  dump.insert(dump.end(), light.begin(), light.end());
  EXPECT_EQ(heavy_posters(dump, truth), std::vector<Address>{ip("172.0.0.1")});
  // Twelve topics spread over eight days do not qualify.
  dump[0].timestamp += 7 * 86400;
  EXPECT_TRUE(heavy_posters(dump, truth).empty());
}

TEST(Score, CountsAndRates) {
  GroundTruth truth;
  const Dump dump = week_of_topics(ip("172.0.0.1"), 12, 1, truth);
  std::vector<std::pair<std::uint64_t, Address>> rows(truth.rows());
  Dump all = dump;
  all.push_back({50, TopicId{1}, Username::parse("0000"), 1370649600});
  rows.emplace_back(50, ip("172.0.0.9"));
  truth = GroundTruth(rows);

  std::vector<AssignmentRecord> r;
  for (std::uint64_t i = 1; i <= 10; ++i) r.push_back(rec(i, ip("172.0.0.1")));
  r.push_back(rec(11, ip("172.0.0.9")));  // stolen by an active address
  r.push_back(rec(50, ip("172.0.0.7")));  // wrong, inactive
  const ScoreReport s = score(r, all, truth);
  EXPECT_EQ(s.posts, 13u);
  EXPECT_EQ(s.assigned, 12u);
  EXPECT_EQ(s.correct, 10u);
  EXPECT_EQ(s.stolen, 1u);
  EXPECT_DOUBLE_EQ(*s.precision, 10.0 / 12.0);
  EXPECT_DOUBLE_EQ(*s.stealing_rate, 1.0 / 12.0);
  EXPECT_DOUBLE_EQ(s.recall, 10.0 / 13.0);
  EXPECT_EQ(s.heavy_addresses, 1u);
  EXPECT_EQ(s.heavy_posts, 12u);
  EXPECT_EQ(s.heavy_identified, 1u);
  EXPECT_DOUBLE_EQ(s.heavy_recall, 10.0 / 12.0);

  std::reverse(r.begin(), r.end());
  const ScoreReport flipped = score(r, all, truth);
  EXPECT_EQ(flipped.correct, s.correct);
  EXPECT_EQ(to_json(flipped), to_json(s));
}

TEST(Score, EmptyAssignments) {
  GroundTruth truth;
  const Dump dump = week_of_topics(ip("172.0.0.1"), 3, 1, truth);
  const ScoreReport s = score({}, dump, truth);
  EXPECT_FALSE(s.precision.has_value());
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_NE(to_json(s).find("\"precision\": null"), std::string::npos);
}

TEST(Score, MissingTruthIsDataError) {
  GroundTruth truth;
  const Dump dump = week_of_topics(ip("172.0.0.1"), 3, 1, truth);
  const std::vector<AssignmentRecord> r{rec(99, ip("172.0.0.1"))};
  EXPECT_THROW(score(r, dump, truth), DataError);
}

}  // namespace
}  // namespace pseudaudit::validate
