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

#include <cmath>
#include <random>

#include "exact_oracle.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/pbnull.hpp"

namespace pseudaudit::pbnull {
namespace {

using testing::exact_log;
using testing::Rational;
using testing::relative_log_error;

TEST(MatchProb, IdentityForEveryK) {
  for (std::uint64_t k = 1; k <= 65536; ++k) ASSERT_EQ(match_prob(k, 16) * 65536.0, static_cast<double>(k)) << k;
  EXPECT_EQ(match_prob(1, 16), 1.0 / 65536.0);
  EXPECT_EQ(match_prob(65536, 16), 1.0);
  EXPECT_THROW(match_prob(0, 16), DomainError);
  EXPECT_THROW(match_prob(65537, 16), DomainError);
}

TEST(MatchProb, EqualsCombinatorialRatio) {
  // 1 - C(2^U - 1, k) / C(2^U, k) with exact big integers.
  using boost::multiprecision::cpp_int;
  auto binom = [](cpp_int n, unsigned k) {
    cpp_int r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  for (unsigned k : {1u, 2u, 3u, 17u, 40u}) {
    const Rational ratio = Rational(binom(65535, k)) / Rational(binom(65536, k));
    const Rational q = 1 - ratio;
    EXPECT_EQ(q, Rational(k) / 65536) << k;
    EXPECT_EQ(static_cast<double>(q), match_prob(k, 16));
  }
}

TEST(WindowPmf, SingleTopic) {
  const NullTable t = window_pmf({16, {1}}, 4);
  EXPECT_DOUBLE_EQ(std::exp(t.log_pmf()[1]), 1.0 / 65536.0);
  EXPECT_DOUBLE_EQ(std::exp(t.log_pmf()[0]), 65535.0 / 65536.0);
  EXPECT_EQ(t.log_survival(0), 0.0);
  EXPECT_NEAR(t.log_survival(1), std::log(1.0 / 65536.0), 1e-15);
  EXPECT_EQ(t.log_pmf()[2], -std::numeric_limits<double>::infinity());
}

TEST(WindowPmf, TwoSingletons) {
  for (Route r : {Route::bernoulli, Route::grouped}) {
    const NullTable t = window_pmf({16, {1, 1}}, 8, r);
    EXPECT_NEAR(t.log_pmf()[2], -32.0 * std::log(2.0), 1e-12);
    EXPECT_NEAR(log_survival(t, 2), -32.0 * std::log(2.0), 1e-12);
    EXPECT_EQ(log_survival(t, 0), 0.0);
  }
}

void check_against_exact(const std::vector<std::uint64_t>& k, int bits, std::size_t c_max) {
  const auto exact = k.size() <= 12 ? testing::subset_pmf(k, bits) : testing::convolved_pmf(k, bits);
  const auto tail = testing::tails(exact);
  for (Route route : {Route::bernoulli, Route::grouped}) {
    const NullTable t = window_pmf({bits, k}, c_max, route);
    ASSERT_EQ(t.c_max(), c_max);
    for (std::size_t n = 0; n <= c_max; ++n) {
      const Rational p = n < exact.size() ? exact[n] : Rational(0);
      const double e = exact_log(p);
      if (std::isinf(e)) {
        ASSERT_TRUE(std::isinf(t.log_pmf()[n]) || t.log_pmf()[n] < -700) << n;
      } else {
        ASSERT_LE(relative_log_error(t.log_pmf()[n], e), 1e-12) << "pmf n=" << n;
      }
    }
    for (std::size_t n = 0; n <= c_max + 3; ++n) {
      // Beyond c_max the table reports Pr(N > c_max).
      const std::size_t idx = std::min(n, c_max + 1);
      const Rational p = idx < tail.size() ? tail[idx] : Rational(0);
      const double e = exact_log(p);
      const double got = log_survival(t, n);
      if (std::isinf(e))
        ASSERT_TRUE(std::isinf(got)) << n;
      else
        ASSERT_LE(relative_log_error(got, e), 1e-12) << "survival n=" << n << " got " << got << " want " << e;
    }
  }
}

TEST(WindowPmf, PublishedSmallInstance) { check_against_exact({3, 7, 1, 1, 12}, 16, 8); }

TEST(WindowPmf, RandomInstancesMatchSubsetEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t t = 1 + rng() % 12;
    std::vector<std::uint64_t> k(t);
    const int bits = trial % 3 == 0 ? 4 : 16;
    for (auto& v : k) v = 1 + rng() % (trial % 2 ? 20 : (std::uint64_t{1} << bits));
    for (auto& v : k) v = std::min<std::uint64_t>(v, std::uint64_t{1} << bits);
    check_against_exact(k, bits, 1 + rng() % 14);
  }
}

TEST(WindowPmf, TruncationKeepsRemainder) {
  std::vector<std::uint64_t> k(30, 9000);
  check_against_exact(k, 16, 5);
  const NullTable t = window_pmf({16, k}, 5);
  double mass = std::exp(t.log_remainder());
  for (double v : t.log_pmf()) mass += std::exp(v);
  EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(WindowPmf, AllOnesIsBinomialTail) {
  // Pr(N >= n) for T topics with k = 1 in closed form.
  const std::size_t t = 40;
  const NullTable table = window_pmf({16, std::vector<std::uint64_t>(t, 1)}, 20);
  const Rational q(1, 65536);
  for (std::size_t n = 0; n <= 20; ++n) {
    Rational tail = 0;
    Rational choose = 1;  // C(t, j)
    for (std::size_t j = 0; j <= t; ++j) {
      if (j > 0) choose = choose * Rational(t - j + 1) / Rational(j);
      if (j >= n) {
        Rational term = choose;
        for (std::size_t i = 0; i < j; ++i) term *= q;
        for (std::size_t i = j; i < t; ++i) term *= (1 - q);
        tail += term;
      }
    }
    ASSERT_LE(relative_log_error(table.log_survival(n), exact_log(tail)), 1e-12) << n;
  }
}

TEST(WindowPmf, RoutesAgreeOnLargeLoads) {
  std::mt19937_64 rng(5);
  std::vector<std::uint64_t> k(2000);
  for (auto& v : k) v = 1 + rng() % 12;
  const NullTable a = window_pmf({16, k}, 120, Route::bernoulli);
  const NullTable b = window_pmf({16, k}, 120, Route::grouped);
  for (std::size_t n = 0; n <= 121; ++n)
    ASSERT_LE(relative_log_error(a.log_survival(n), b.log_survival(n)), 1e-12) << n;
  // Reaches the deep tail without underflow.
  EXPECT_LT(a.log_survival(30), std::log(1e-50));
  EXPECT_TRUE(std::isfinite(a.log_survival(30)));
}

TEST(WindowPmf, SurvivalMonotoneAndMassConserved) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint64_t> k(1 + rng() % 300);
    for (auto& v : k) v = 1 + rng() % 40;
    const NullTable t = window_pmf({16, k}, default_c_max(rng() % 10));
    EXPECT_EQ(t.log_survival(0), 0.0);
    double mass = std::exp(t.log_remainder());
    for (double v : t.log_pmf()) mass += std::exp(v);
    EXPECT_NEAR(mass, 1.0, 1e-12);
    for (std::size_t n = 1; n <= t.c_max() + 2; ++n) ASSERT_LE(t.log_survival(n), t.log_survival(n - 1));
  }
}

TEST(WindowPmf, CertainMatch) {
  const NullTable t = window_pmf({4, {16, 16, 3}}, 5);
  EXPECT_EQ(t.log_survival(2), 0.0);
  EXPECT_NEAR(t.log_survival(3), std::log(3.0 / 16.0), 1e-15);
  const NullTable g = window_pmf({4, {16, 16, 3}}, 5, Route::grouped);
  EXPECT_NEAR(g.log_survival(3), std::log(3.0 / 16.0), 1e-15);
}

TEST(WindowPmf, EmptyLoadAndErrors) {
  const NullTable t = window_pmf({16, {}}, 3);
  EXPECT_EQ(t.log_survival(0), 0.0);
  EXPECT_TRUE(std::isinf(t.log_survival(1)));
  EXPECT_THROW(window_pmf({16, {1}}, 0), UsageError);
  EXPECT_THROW(window_pmf({16, {0}}, 4), DomainError);
}

TEST(NullTable, JsonHasSurvivalArray) {
  NullTable t = window_pmf({16, {1, 2}}, 3);
  t.window_id = "w7:2013-06-10";
  const std::string j = to_json(t);
  EXPECT_NE(j.find("\"window_id\":\"w7:2013-06-10\""), std::string::npos);
  EXPECT_NE(j.find("\"log_survival\":[0.0"), std::string::npos);
  EXPECT_EQ(default_c_max(10), 104u);
}

}  // namespace
}  // namespace pseudaudit::pbnull
