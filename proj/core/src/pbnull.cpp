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

#include "pseudaudit/pbnull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "pseudaudit/errors.hpp"
#include "pseudaudit/hash.hpp"

namespace pseudaudit::pbnull {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 - exp(x)) for x <= 0.
double log1m_exp(double x) noexcept {
  if (x == kNegInf) return 0.0;
  if (x > -0.6931471805599453) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

struct Bernoulli {
  double log_q;
  double log_1mq;
};

Bernoulli bernoulli_for(std::uint64_t k, int bits) {
  const double q = match_prob(k, bits);
  // 1 - q = (2^U - k) / 2^U exactly.
  const double one_minus = std::ldexp(static_cast<double>((std::uint64_t{1} << bits) - k), -bits);
  return {std::log(q), one_minus == 0.0 ? kNegInf : std::log(one_minus)};
}

}  // namespace

double log_add(double a, double b) noexcept {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

double match_prob(std::uint64_t k, int username_bits) {
  if (username_bits < 1 || username_bits > 52) throw DomainError("username_bits must be in [1, 52]");
  const std::uint64_t space = std::uint64_t{1} << username_bits;
  if (k < 1 || k > space)
    throw DomainError("k = " + std::to_string(k) + " outside [1, 2^" + std::to_string(username_bits) + "]");
  return std::ldexp(static_cast<double>(k), -username_bits);
}

void TopicLoad::validate() const {
  for (std::uint64_t v : k) (void)match_prob(v, username_bits);
}

std::string TopicLoad::digest() const {
  std::vector<std::uint64_t> sorted = k;
  std::sort(sorted.begin(), sorted.end());
  Sha1 h;
  const std::string head = "U=" + std::to_string(username_bits) + ";";
  h.update(head);
  for (std::uint64_t v : sorted) {
    const std::string s = std::to_string(v) + ",";
    h.update(s);
  }
  return to_hex(h.finalize());
}

NullTable::NullTable(std::vector<double> log_pmf, double log_remainder)
    : log_pmf_(std::move(log_pmf)), log_remainder_(log_remainder) {
  const std::size_t n = log_pmf_.size();
  log_survival_.assign(n, 0.0);
  if (n == 0) return;
  // Upper tails by suffix accumulation; where the tail exceeds one half the
  // complement of the lower cumulative is more accurate.
  std::vector<double> upper(n);
  double acc = log_remainder_;
  for (std::size_t i = n; i-- > 0;) {
    acc = log_add(acc, log_pmf_[i]);
    upper[i] = acc;
  }
  double lower = kNegInf;  // log Pr(N < i)
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0)
      log_survival_[0] = 0.0;
    else if (upper[i] > -0.6931471805599453)
      log_survival_[i] = std::min(0.0, log1m_exp(lower));
    else
      log_survival_[i] = upper[i];
    if (i > 0) log_survival_[i] = std::min(log_survival_[i], log_survival_[i - 1]);
    lower = log_add(lower, log_pmf_[i]);
  }
}

std::size_t default_c_max(std::uint64_t max_observed) noexcept {
  return static_cast<std::size_t>(4 * max_observed + 64);
}

NullTable window_pmf(const TopicLoad& loads, std::size_t c_max, Route route) {
  if (c_max < 1) throw UsageError("c_max must be at least 1");
  loads.validate();
  std::vector<double> pmf(c_max + 1, kNegInf);
  pmf[0] = 0.0;
  double rem = kNegInf;
  std::size_t top = 0;  // highest index that can be non-zero

  if (route == Route::bernoulli) {
    for (std::uint64_t k : loads.k) {
      const Bernoulli b = bernoulli_for(k, loads.username_bits);
      rem = log_add(rem, pmf[c_max] + b.log_q);
      const std::size_t hi = std::min(top + 1, c_max);
      for (std::size_t n = hi; n > 0; --n) pmf[n] = log_add(pmf[n] + b.log_1mq, pmf[n - 1] + b.log_q);
      pmf[0] += b.log_1mq;
      top = hi;
    }
  } else {
    std::map<std::uint64_t, std::uint64_t> groups;
    for (std::uint64_t k : loads.k) ++groups[k];
    std::vector<double> next(c_max + 1);
    for (const auto& [k, m] : groups) {
      const Bernoulli b = bernoulli_for(k, loads.username_bits);
      // Binomial(m, q) in logs, j = 0..m. log C(m, j) is summed from the
      // nearer end so it is exactly 0 at j = 0 and j = m; each term is then
      // formed directly, which keeps near-certain outcomes near 0 accurate.
      std::vector<double> log_c(m + 1, 0.0);
      for (std::uint64_t j = 1; j <= m / 2; ++j)
        log_c[j] = log_c[j - 1] + std::log(static_cast<double>(m - j + 1) / static_cast<double>(j));
      for (std::uint64_t j = m / 2 + 1; j <= m; ++j) log_c[j] = log_c[m - j];
      std::vector<double> binom(m + 1, kNegInf);
      for (std::uint64_t j = 0; j <= m; ++j) {
        if (j < m && b.log_1mq == kNegInf) continue;
        double v = log_c[j];
        if (j > 0) v += static_cast<double>(j) * b.log_q;
        if (j < m) v += static_cast<double>(m - j) * b.log_1mq;
        binom[j] = v;
      }
      std::vector<double> tail(m + 2, kNegInf);  // log Pr(J >= j)
      for (std::uint64_t j = m + 1; j-- > 0;) tail[j] = log_add(tail[j + 1], binom[j]);
      for (std::size_t n = 0; n <= c_max; ++n) {
        double acc = kNegInf;
        const std::size_t jmax = std::min<std::uint64_t>(n, m);
        for (std::size_t j = 0; j <= jmax; ++j) acc = log_add(acc, pmf[n - j] + binom[j]);
        next[n] = acc;
      }
      // Mass pushed past c_max: i + j > c_max.
      double spill = kNegInf;
      for (std::size_t i = 0; i <= std::min(top, c_max); ++i) {
        const std::uint64_t need = c_max - i + 1;
        if (need <= m) spill = log_add(spill, pmf[i] + tail[need]);
      }
      rem = log_add(rem, spill);
      pmf.swap(next);
      top = std::min<std::uint64_t>(c_max, top + m);
    }
  }
  NullTable table(std::move(pmf), rem);
  table.loads_digest = loads.digest();
  return table;
}

std::string to_json(const NullTable& table) {
  nlohmann::ordered_json j;
  j["window_id"] = table.window_id;
  j["loads_digest"] = table.loads_digest;
  j["c_max"] = table.c_max();
  j["log_remainder"] = table.log_remainder();
  j["log_survival"] = table.log_survival();
  return j.dump();
}

}  // namespace pseudaudit::pbnull
