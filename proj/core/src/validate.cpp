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

#include "pseudaudit/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "pseudaudit/errors.hpp"

namespace pseudaudit::validate {

std::size_t bogon_check(std::span<const attribute::AssignmentRecord> assignments, const CidrSet& bogons) {
  return static_cast<std::size_t>(std::count_if(assignments.begin(), assignments.end(),
                                                [&](const auto& r) { return bogons.contains(r.address); }));
}

double log_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("log_gamma_q needs a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return std::log(boost::math::gamma_q(a, x));
  // Modified Lentz evaluation of the continued fraction for Q, kept in logs
  // so the prefactor x^a e^-x / Gamma(a) cannot underflow.
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
}

Chi2Result uniformity_chi2(std::span<const std::uint64_t> histogram) {
  if (histogram.size() < 2) throw UsageError("chi-squared needs at least two cells");
  long double total = 0;
  for (std::uint64_t c : histogram) total += static_cast<long double>(c);
  const long double cells = static_cast<long double>(histogram.size());
  if (total < 5.0L * cells)
    throw UsageError("chi-squared needs at least 5 observations per cell on average (have " +
                     std::to_string(static_cast<double>(total)) + " for " + std::to_string(histogram.size()) +
                     " cells)");
  const long double expected = total / cells;
  long double stat = 0;
  for (std::uint64_t c : histogram) {
    const long double diff = static_cast<long double>(c) - expected;
    stat += diff * diff / expected;
  }
  Chi2Result r;
  r.statistic = static_cast<double>(stat);
  r.degrees_of_freedom = static_cast<double>(histogram.size() - 1);
  r.log_p_value = log_gamma_q(r.degrees_of_freedom / 2.0, r.statistic / 2.0);
  r.p_value = std::exp(r.log_p_value);
  return r;
}

std::vector<Address> heavy_posters(const Dump& dump, const GroundTruth& truth, int min_topics) {
  // address -> (day, topic)
  std::map<std::uint32_t, std::vector<std::pair<std::int64_t, std::uint64_t>>> by_address;
  for (const Post& p : dump) {
    const auto a = truth.find(p.post_id);
    if (!a) throw DataError("post " + std::to_string(p.post_id) + " has no ground truth");
    by_address[a->value].emplace_back(scheme::day_number(scheme::date_of(p.timestamp)), p.topic.value);
  }
  std::vector<Address> out;
  for (auto& [address, posts] : by_address) {
    std::sort(posts.begin(), posts.end());
    std::map<std::uint64_t, int> live;  // topic -> posts inside the window
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < posts.size(); ++hi) {
      ++live[posts[hi].second];
      for (; posts[lo].first < posts[hi].first - 6; ++lo) {
        auto it = live.find(posts[lo].second);
        if (--it->second == 0) live.erase(it);
      }
      if (static_cast<int>(live.size()) >= min_topics) {
        out.push_back(Address{address});
        break;
      }
    }
  }
  return out;
}

ScoreReport score(std::span<const attribute::AssignmentRecord> assignments, const Dump& dump,
                  const GroundTruth& truth) {
  ScoreReport r;
  r.posts = dump.size();
  std::unordered_set<std::uint32_t> active;
  for (const Post& p : dump) {
    const auto a = truth.find(p.post_id);
    if (!a) throw DataError("post " + std::to_string(p.post_id) + " has no ground truth");
    active.insert(a->value);
  }
  const auto heavy_list = heavy_posters(dump, truth);
  const std::set<std::uint32_t> heavy = [&] {
    std::set<std::uint32_t> s;
    for (Address a : heavy_list) s.insert(a.value);
    return s;
  }();
  r.heavy_addresses = heavy.size();
  for (const Post& p : dump) r.heavy_posts += heavy.count(truth.find(p.post_id)->value);

  std::set<std::uint32_t> identified;
  for (const auto& rec : assignments) {
    const auto a = truth.find(rec.post_id);
    if (!a) throw DataError("assigned post " + std::to_string(rec.post_id) + " has no ground truth");
    ++r.assigned;
    if (*a == rec.address) {
      ++r.correct;
      if (heavy.count(a->value)) {
        ++r.heavy_correct;
        identified.insert(a->value);
      }
    } else if (active.count(rec.address.value)) {
      ++r.stolen;
    }
  }
  r.heavy_identified = identified.size();
  if (r.assigned) {
    r.precision = static_cast<double>(r.correct) / static_cast<double>(r.assigned);
    r.stealing_rate = static_cast<double>(r.stolen) / static_cast<double>(r.assigned);
  }
  r.recall = r.posts ? static_cast<double>(r.correct) / static_cast<double>(r.posts) : 0.0;
  if (r.heavy_posts) r.heavy_recall = static_cast<double>(r.heavy_correct) / static_cast<double>(r.heavy_posts);
  return r;
}

std::string to_json(const ScoreReport& r) {
  nlohmann::ordered_json j;
  j["posts"] = r.posts;
  j["assigned"] = r.assigned;
  j["correct"] = r.correct;
  j["stolen"] = r.stolen;
  j["precision"] = r.precision ? nlohmann::ordered_json(*r.precision) : nlohmann::ordered_json(nullptr);
  j["recall"] = r.recall;
  j["stealing_rate"] = r.stealing_rate ? nlohmann::ordered_json(*r.stealing_rate) : nlohmann::ordered_json(nullptr);
  j["heavy_posters"] = {{"min_topics_per_week", kHeavyTopicsPerWeek},
                        {"addresses", r.heavy_addresses},
                        {"identified", r.heavy_identified},
                        {"posts", r.heavy_posts},
                        {"correct", r.heavy_correct},
                        {"recall", r.heavy_recall}};
  return j.dump(2) + "\n";
}

}  // namespace pseudaudit::validate
