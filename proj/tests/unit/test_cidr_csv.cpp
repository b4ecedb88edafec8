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

#include <random>
#include <sstream>

#include "pseudaudit/cidr.hpp"
#include "pseudaudit/csv.hpp"
#include "pseudaudit/errors.hpp"

namespace pseudaudit {
namespace {

TEST(CidrRange, ParseAndBounds) {
  const CidrRange r = CidrRange::parse("10.0.0.0/8");
  EXPECT_EQ(r.first(), 0x0a000000u);
  EXPECT_EQ(r.last(), 0x0affffffu);
  EXPECT_EQ(r.size(), 1u << 24);
  EXPECT_TRUE(r.contains(*parse_dotted("10.1.2.3")));
  EXPECT_FALSE(r.contains(*parse_dotted("11.0.0.0")));
  EXPECT_EQ(r.to_string(), "10.0.0.0/8");
  EXPECT_EQ(CidrRange::parse("0.0.0.0/0").size(), std::uint64_t{1} << 32);
  EXPECT_THROW(CidrRange::parse("10.0.0.1/8"), ParseError);
  EXPECT_THROW(CidrRange::parse("10.0.0.0/33"), ParseError);
  EXPECT_THROW(CidrRange::parse("10.0.0.0"), ParseError);
}

TEST(CidrSet, MergesAndContains) {
  const auto ranges = parse_cidr_list("10.0.0.0/8\n10.1.0.0/16 # nested\n11.0.0.0/8\n\n# comment\n192.168.0.0/16\n");
  const CidrSet set(ranges);
  EXPECT_EQ(set.intervals().size(), 2u);  // 10/8 and 11/8 are adjacent
  EXPECT_EQ(set.covered(), (2u << 24) + (1u << 16));
  EXPECT_TRUE(set.contains(*parse_dotted("10.1.2.3")));
  EXPECT_TRUE(set.contains(*parse_dotted("11.255.255.255")));
  EXPECT_FALSE(set.contains(*parse_dotted("12.0.0.0")));
  EXPECT_FALSE(set.contains(*parse_dotted("9.255.255.255")));
  EXPECT_TRUE(set.contains(*parse_dotted("192.168.44.1")));
}

TEST(CidrSet, ParseErrorCarriesLineNumber) {
  try {
    parse_cidr_list("10.0.0.0/8\n# ok\nbogus\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(CidrSet, DefaultBogonsCover138Percent) {
  const CidrSet bogons(default_bogons());
  const double share = static_cast<double>(bogons.covered()) / 4294967296.0;
  EXPECT_NEAR(share, 0.138, 0.0005);
  std::mt19937 rng(11);
  int hits = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) hits += bogons.contains(Address{static_cast<std::uint32_t>(rng())});
  EXPECT_NEAR(hits / static_cast<double>(n), share, 0.003);
}

TEST(Csv, QuotedFieldsAndComments) {
  std::istringstream in("# header comment\na,b\n\"x,1\",\"say \"\"hi\"\"\"\n\nplain,\"multi\nline\"\n");
  csv::Reader r(in);
  csv::Row row;
  ASSERT_TRUE(r.next(row));
  EXPECT_EQ(row, (csv::Row{"a", "b"}));
  ASSERT_TRUE(r.next(row));
  EXPECT_EQ(row, (csv::Row{"x,1", "say \"hi\""}));
  EXPECT_EQ(r.line(), 3u);
  ASSERT_TRUE(r.next(row));
  EXPECT_EQ(row, (csv::Row{"plain", "multi\nline"}));
  EXPECT_FALSE(r.next(row));
}

TEST(Csv, WriteRoundTrip) {
  std::ostringstream out;
  const csv::Row row{"a", "b,c", "d\"e", ""};
  csv::write_row(out, row);
  std::istringstream in(out.str());
  csv::Reader r(in);
  csv::Row back;
  ASSERT_TRUE(r.next(back));
  EXPECT_EQ(back, row);
}

}  // namespace
}  // namespace pseudaudit
