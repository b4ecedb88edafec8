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

#include "pseudaudit/chrono.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/synthgen.hpp"

namespace pseudaudit::chrono {
namespace {

TEST(Interpolate, MidpointAndAnchors) {
  const AnchorSet a({{100, 1000}, {200, 2000}});
  EXPECT_DOUBLE_EQ(interpolate(a, 150), 1500.0);
  EXPECT_DOUBLE_EQ(interpolate(a, 100), 1000.0);
  EXPECT_DOUBLE_EQ(interpolate(a, 200), 2000.0);
  EXPECT_DOUBLE_EQ(interpolate(a, 50), 500.0);
  EXPECT_DOUBLE_EQ(interpolate(a, 300), 3000.0);
}

TEST(Interpolate, EdgeCases) {
  EXPECT_THROW(interpolate(AnchorSet{}, 1), UsageError);
  EXPECT_DOUBLE_EQ(interpolate(AnchorSet({{7, 42}}), 1000), 42.0);
  EXPECT_THROW(AnchorSet({{1, 10}, {2, 10}}), DataError);
  EXPECT_THROW(AnchorSet({{2, 10}, {1, 20}}), DataError);
  const AnchorSet t = AnchorSet::thinned({{5, 50}, {1, 10}, {2, 10}, {3, 9}, {4, 40}});
  EXPECT_EQ(t.anchors(), (std::vector<std::pair<std::uint64_t, std::int64_t>>{{1, 10}, {4, 40}, {5, 50}}));
}

TEST(Interpolate, ExactForAffineProcess) {
  std::vector<std::pair<std::uint64_t, std::int64_t>> rows;
  for (std::uint64_t id = 10; id < 10000; id += 37) rows.emplace_back(id, 1370649600 + 6 * static_cast<std::int64_t>(id));
  const AnchorSet a(rows);
  for (std::uint64_t id = 0; id < 11000; id += 13)
    EXPECT_DOUBLE_EQ(interpolate(a, id), 1370649600.0 + 6.0 * static_cast<double>(id)) << id;
}

TEST(Interpolate, MonotoneInPostId) {
  const AnchorSet a({{3, 100}, {10, 130}, {11, 400}, {40, 401}, {90, 9000}});
  double prev = -1e300;
  for (std::uint64_t id = 0; id < 120; ++id) {
    const double t = interpolate(a, id);
    EXPECT_GE(t, prev) << id;
    prev = t;
  }
}

TEST(Interpolate, SyntheticDumpErrorBelowGapScale) {
  const auto config = synthgen::default_forum();
  const auto forum = synthgen::generate(synthgen::default_population(), config);
  const AnchorSet a = AnchorSet::thinned(synthgen::sample_anchors(forum.dump, 0.1, 3));
  std::vector<double> err;
  for (const Post& p : forum.dump)
    if (!a.contains(p.post_id)) err.push_back(std::abs(interpolate(a, p.post_id) - static_cast<double>(p.timestamp)));
  ASSERT_FALSE(err.empty());
  std::nth_element(err.begin(), err.begin() + static_cast<std::ptrdiff_t>(err.size() / 2), err.end());
  EXPECT_LT(err[err.size() / 2], config.reply_gap_minutes * 60.0);
}

TEST(GapStats, NearestRank) {
  const AnchorSet a({{0, 0}, {10, 100}, {20, 160}, {30, 1160}});
  std::vector<std::uint64_t> ids;
  for (std::uint64_t i = 0; i <= 35; ++i) ids.push_back(i);
  const GapStats s = gap_stats(a, ids);
  EXPECT_EQ(s.bracketed, 27u);
  EXPECT_EQ(s.outside, 5u);
  EXPECT_DOUBLE_EQ(s.mean, (9 * 100 + 9 * 60 + 9 * 1000) / 27.0);
  EXPECT_EQ(s.p95, 1000.0);
  EXPECT_EQ(s.p99, 1000.0);
}

TEST(GapStats, AllAnchoredIsDegenerate) {
  const AnchorSet a({{1, 5}, {2, 6}, {3, 9}});
  const std::vector<std::uint64_t> ids{1, 2, 3};
  const GapStats s = gap_stats(a, ids);
  EXPECT_EQ(s.bracketed, 0u);
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_EQ(s.p99, 0.0);
}

TEST(Iso8601, RoundTripAndOffsets) {
  EXPECT_EQ(format_iso8601(1373241600), "2013-07-08T00:00:00Z");
  EXPECT_EQ(parse_iso8601("2013-07-08T00:00:00Z"), 1373241600);
  EXPECT_EQ(parse_iso8601("2013-07-08T02:00:00+02:00"), 1373241600);
  EXPECT_EQ(parse_iso8601("2013-07-07T19:00:00-05:00"), 1373241600);
  EXPECT_EQ(parse_iso8601("1969-12-31T23:59:59"), -1);
  EXPECT_EQ(format_iso8601(-1), "1969-12-31T23:59:59Z");
  for (const char* bad : {"2013-07-08", "2013-07-08T25:00:00Z", "2013-02-30T00:00:00Z", "2013-07-08T00:00:00+2"})
    EXPECT_THROW(parse_iso8601(bad), ParseError) << bad;
}

TEST(AnchorsCsv, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "pseudaudit_chrono";
  std::filesystem::create_directories(dir);
  const AnchorSet a({{1, 1370649600}, {17, 1370649661}, {90, 1370700000}});
  write_anchors(dir / "a.csv", a, "# anchors\n");
  EXPECT_EQ(read_anchors(dir / "a.csv").anchors(), a.anchors());
  std::ofstream(dir / "bad.csv") << "post_id,timestamp_iso8601\n1,2013-07-08T00:00:00Z\n1,2013-07-09T00:00:00Z\n";
  EXPECT_THROW(read_anchors(dir / "bad.csv"), DataError);
}

}  // namespace
}  // namespace pseudaudit::chrono
