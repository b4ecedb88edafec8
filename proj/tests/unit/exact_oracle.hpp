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

// Exact rational reference for the Poisson-binomial null, by enumerating
// every on/off pattern of the topics.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace pseudaudit::testing {

using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

/// Exact Pr(N = n), n = 0..T, over all 2^T subsets.
inline std::vector<Rational> subset_pmf(const std::vector<std::uint64_t>& k, int bits) {
  const std::size_t t = k.size();
  const Rational space = Rational(boost::multiprecision::cpp_int(1) << bits);
  std::vector<Rational> q(t), nq(t);
  for (std::size_t i = 0; i < t; ++i) {
    q[i] = Rational(k[i]) / space;
    nq[i] = 1 - q[i];
  }
  std::vector<Rational> pmf(t + 1, Rational(0));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    Rational p = 1;
    int on = 0;
    for (std::size_t i = 0; i < t; ++i) {
      if (mask >> i & 1) {
        p *= q[i];
        ++on;
      } else {
        p *= nq[i];
      }
    }
    pmf[static_cast<std::size_t>(on)] += p;
  }
  return pmf;
}

/// Exact Pr(N = n) by polynomial multiplication; agrees with subset_pmf and
/// scales to larger T.
inline std::vector<Rational> convolved_pmf(const std::vector<std::uint64_t>& k, int bits) {
  const Rational space = Rational(boost::multiprecision::cpp_int(1) << bits);
  std::vector<Rational> pmf{Rational(1)};
  for (std::uint64_t v : k) {
    const Rational q = Rational(v) / space;
    std::vector<Rational> next(pmf.size() + 1, Rational(0));
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      next[i] += pmf[i] * (1 - q);
      next[i + 1] += pmf[i] * q;
    }
    pmf.swap(next);
  }
  return pmf;
}

/// Natural log of a positive rational; -inf for zero.
inline double exact_log(const Rational& r) {
  if (r == 0) return -std::numeric_limits<double>::infinity();
  const BigFloat num(boost::multiprecision::numerator(r));
  const BigFloat den(boost::multiprecision::denominator(r));
  return static_cast<double>(log(num) - log(den));
}

inline std::vector<Rational> tails(const std::vector<Rational>& pmf) {
  std::vector<Rational> out(pmf.size() + 1, Rational(0));
  for (std::size_t i = pmf.size(); i-- > 0;) out[i] = out[i + 1] + pmf[i];
  return out;
}

inline double relative_log_error(double got, double expect) {
  if (expect == got) return 0.0;
  return std::abs(got - expect) / std::max(1.0, std::abs(expect));
}

}  // namespace pseudaudit::testing
