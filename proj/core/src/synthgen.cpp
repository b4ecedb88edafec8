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

#include "pseudaudit/synthgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "pseudaudit/errors.hpp"

namespace pseudaudit::synthgen {

using scheme::Date;

double ActivityLaw::weight(std::uint64_t rank) const noexcept {
  if (kind == Kind::uniform) return 1.0;
  return std::exp(a - b * std::pow(static_cast<double>(rank), c));
}

void ActivityLaw::validate(std::size_t n) const {
  if (kind == Kind::uniform) return;
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw ConfigError("activity law parameters must be finite");
  // log-weights are monotone in r (for b, c of either sign), so the end
  // points bound them all.
  for (std::uint64_t r : {std::uint64_t{1}, static_cast<std::uint64_t>(std::max<std::size_t>(n, 1))}) {
    const double w = weight(r);
    if (!(w > 0.0) || !std::isfinite(w))
      throw ConfigError("activity weight at rank " + std::to_string(r) + " is not positive and finite");
  }
}

std::vector<double> expected_counts(const ActivityLaw& law, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t r = 0; r < n; ++r) out[r] = law.weight(r + 1);
  return out;
}

void PopulationModel::validate() const {
  activity.validate(n_addresses);
  if (!(churn_rate >= 0.0 && churn_rate < 1.0)) throw ConfigError("churn_rate must be in [0, 1)");
  for (const PoolRange& p : pool)
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) throw ConfigError("pool weights must be positive");
}

std::uint64_t DrawLaw::draw(SplitMix64& rng) const noexcept {
  switch (kind) {
    case Kind::constant:
      return offset + static_cast<std::uint64_t>(std::llround(mean));
    case Kind::poisson:
      return offset + rng.poisson(mean);
    case Kind::geometric:
      return offset + rng.geometric(mean);
  }
  return offset;
}

void DrawLaw::validate(std::string_view name) const {
  if (!std::isfinite(mean) || mean < 0.0)
    throw ConfigError(std::string(name) + ": mean must be finite and non-negative");
}

DrawLaw DrawLaw::parse(std::string_view text) {
  auto bad = [&] { return ConfigError("bad draw law '" + std::string(text) + "', expected [offset+]kind(mean)"); };
  DrawLaw law;
  std::string_view rest = text;
  if (auto plus = rest.find('+'); plus != std::string_view::npos) {
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + plus, law.offset);
    if (ec != std::errc{} || p != rest.data() + plus) throw bad();
    rest.remove_prefix(plus + 1);
  }
  const auto open = rest.find('(');
  if (open == std::string_view::npos || rest.back() != ')') throw bad();
  const std::string_view kind = rest.substr(0, open);
  if (kind == "constant")
    law.kind = Kind::constant;
  else if (kind == "poisson")
    law.kind = Kind::poisson;
  else if (kind == "geometric")
    law.kind = Kind::geometric;
  else
    throw bad();
  const std::string mean(rest.substr(open + 1, rest.size() - open - 2));
  try {
    std::size_t used = 0;
    law.mean = std::stod(mean, &used);
    if (used != mean.size()) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  law.validate(text);
  return law;
}

std::string DrawLaw::to_string() const {
  const char* names[] = {"constant", "poisson", "geometric"};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%.17g)", names[static_cast<int>(kind)], mean);
  return offset ? std::to_string(offset) + "+" + buf : std::string(buf);
}

scheme::SliceRegime ForumConfig::effective_regimes() const {
  if (!regimes.regimes().empty()) return regimes;
  const int d = std::max(days, 1);
  return scheme::SliceRegime::constant(start, start + std::chrono::days{d - 1}, scheme.slice_start);
}

void ForumConfig::validate() const {
  scheme.validate();
  if (days < 0) throw ConfigError("days must be >= 0");
  topics_per_day.validate("topics_per_day");
  posts_per_topic.validate("posts_per_topic");
  if (!(reply_gap_minutes >= 0.0) || !std::isfinite(reply_gap_minutes))
    throw ConfigError("reply_gap_minutes must be finite and non-negative");
  if (!hour_weights.empty()) {
    if (hour_weights.size() != 24) throw ConfigError("hour_weights needs 24 entries");
    double total = 0.0;
    for (double w : hour_weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("hour weights must be finite and non-negative");
      total += w;
    }
    if (!(total > 0.0)) throw ConfigError("hour weights sum to zero");
  }
  if (first_topic_id == 0 || first_post_id == 0) throw ConfigError("ids start at 1");
  if (days > 0) {
    const auto r = effective_regimes();
    if (r.first_date() > start || r.last_date() < last_day())
      throw ConfigError("regime table does not cover the forum span " + scheme::format_date(start) + ".." +
                        scheme::format_date(last_day()));
    for (int s : r.slices_in_use()) {
      scheme::SchemeConfig c = scheme;
      c.slice_start = s;
      c.validate();
    }
  }
}

ForumConfig default_forum() {
  ForumConfig f;
  f.scheme.address_space_bits = 24;
  f.scheme.high_octet = 172;
  f.scheme.slice_start = 9;
  f.start = scheme::parse_date("2013-06-08");
  f.days = 60;
  f.topics_per_day = DrawLaw{DrawLaw::Kind::poisson, 500.0 / 60.0, 0};
  f.posts_per_topic = DrawLaw{DrawLaw::Kind::poisson, 4.0, 1};
  f.regimes = scheme::SliceRegime::constant(f.start, f.last_day(), 9);
  f.seed = 20130708;
  return inject_regime_switch(f, f.start + std::chrono::days{30});
}

PopulationModel default_population() { return PopulationModel{}; }

ForumConfig inject_regime_switch(ForumConfig forum, Date switch_date) {
  if (forum.days <= 0 || switch_date < forum.start || switch_date > forum.last_day())
    throw RangeError("switch date " + scheme::format_date(switch_date) + " outside the forum span");
  const scheme::SliceRegime current = forum.effective_regimes();
  std::vector<scheme::Regime> out;
  for (const scheme::Regime& r : current.regimes()) {
    if (r.last < switch_date) {
      out.push_back({r.first, r.last, r.slice_start - 1});
    } else if (r.first >= switch_date) {
      out.push_back(r);
    } else {
      out.push_back({r.first, switch_date - std::chrono::days{1}, r.slice_start - 1});
      out.push_back({switch_date, r.last, r.slice_start});
    }
  }
  for (const auto& r : out)
    if (r.slice_start < 0) throw ConfigError("regime switch would make slice_start negative");
  // Merge neighbours that ended up with equal slices.
  std::vector<scheme::Regime> merged;
  for (const auto& r : out) {
    if (!merged.empty() && merged.back().slice_start == r.slice_start)
      merged.back().last = r.last;
    else
      merged.push_back(r);
  }
  forum.regimes = scheme::SliceRegime(std::move(merged));
  return forum;
}

namespace {

class AddressSampler {
 public:
  AddressSampler(const PopulationModel& pop, const scheme::SchemeConfig& cfg)
      : cfg_(cfg), bogons_(pop.bogons) {
    if (pop.pool.empty()) {
      const int prefix = cfg.address_space_bits == 32 ? 0 : 8;
      CidrRange whole{Address{cfg.address_space_bits == 32 ? 0u : std::uint32_t{cfg.high_octet} << 24}, prefix};
      ranges_.push_back(whole);
      cumulative_.push_back(1.0);
    } else {
      double acc = 0.0;
      for (const PoolRange& p : pop.pool) {
        ranges_.push_back(p.range);
        acc += p.weight;
        cumulative_.push_back(acc);
      }
    }
  }

  Address draw(SplitMix64& rng) {
    for (int attempt = 0; attempt < 1'000'000; ++attempt) {
      const CidrRange& r = ranges_[rng.discrete(cumulative_)];
      const Address a{static_cast<std::uint32_t>(r.first() + rng.below(r.size()))};
      if (!cfg_.contains(a) || bogons_.contains(a) || used_.count(a.value)) continue;
      used_.insert(a.value);
      return a;
    }
    throw ConfigError("address pool exhausted: cannot find an unused non-bogon address in the configured space");
  }

 private:
  scheme::SchemeConfig cfg_;
  CidrSet bogons_;
  std::vector<CidrRange> ranges_;
  std::vector<double> cumulative_;
  std::unordered_set<std::uint32_t> used_;
};

struct RawTopic {
  std::int64_t created = 0;
  std::size_t order = 0;  // generation index
};

struct RawPost {
  std::int64_t timestamp = 0;
  std::size_t order = 0;
  TopicId topic;
  Username username;
  Address address;
};

}  // namespace

Forum generate(const PopulationModel& population, const ForumConfig& forum) {
  population.validate();
  forum.validate();
  Forum result;
  if (forum.days == 0) return result;
  if (population.n_addresses == 0 && forum.topics_per_day.expected() > 0.0 && forum.posts_per_topic.expected() > 0.0)
    throw ConfigError("population has no addresses but the forum expects posts");

  const scheme::SliceRegime regimes = forum.effective_regimes();
  const SplitMix64 root(forum.seed);
  SplitMix64 address_rng = root.split(1);
  SplitMix64 topic_rng = root.split(2);
  SplitMix64 post_rng = root.split(3);
  SplitMix64 churn_rng = root.split(4);

  // Population slots and their address timelines.
  const std::size_t n = population.n_addresses;
  AddressSampler sampler(population, forum.scheme);
  std::vector<std::vector<std::pair<int, Address>>> timeline(n);  // (first day, address)
  for (std::size_t i = 0; i < n; ++i) {
    const Address a = sampler.draw(address_rng);
    timeline[i].push_back({0, a});
    result.addresses.push_back(a);
  }
  for (int d = 1; d < forum.days; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      if (churn_rng.uniform() < population.churn_rate) {
        const Address a = sampler.draw(address_rng);
        timeline[i].push_back({d, a});
        result.addresses.push_back(a);
      }
    }
  }
  auto address_on = [&](std::size_t slot, int day) {
    const auto& t = timeline[slot];
    auto it = std::upper_bound(t.begin(), t.end(), day, [](int d, const auto& e) { return d < e.first; });
    return std::prev(it)->second;
  };

  std::vector<double> weights_cum(n);
  {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) weights_cum[i] = (acc += population.activity.weight(i + 1));
  }
  std::vector<double> hours_cum(24);
  {
    double acc = 0.0;
    for (int h = 0; h < 24; ++h) hours_cum[h] = (acc += forum.hour_weights.empty() ? 1.0 : forum.hour_weights[h]);
  }

  const std::int64_t first_second = scheme::day_number(forum.start) * 86400;
  const std::int64_t end_second = first_second + std::int64_t{forum.days} * 86400;  // exclusive

  std::vector<RawTopic> topics;
  for (int d = 0; d < forum.days; ++d) {
    const std::uint64_t count = forum.topics_per_day.draw(topic_rng);
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto hour = static_cast<std::int64_t>(topic_rng.discrete(hours_cum));
      const auto second = static_cast<std::int64_t>(topic_rng.below(3600));
      topics.push_back({first_second + std::int64_t{d} * 86400 + hour * 3600 + second, topics.size()});
    }
  }
  std::stable_sort(topics.begin(), topics.end(),
                   [](const RawTopic& x, const RawTopic& y) { return x.created < y.created; });

  scheme::SchemeConfig post_scheme = forum.scheme;
  std::vector<RawPost> posts;
  std::uint64_t next_topic = forum.first_topic_id;
  for (std::size_t t = 0; t < topics.size(); ++t) {
    const std::uint64_t count = forum.posts_per_topic.draw(post_rng);
    if (count == 0) continue;
    const TopicId topic{next_topic++};
    std::map<std::pair<int, std::uint32_t>, Address> seen;  // (slice, username) -> poster
    std::int64_t ts = topics[t].created;
    for (std::uint64_t j = 0; j < count; ++j) {
      if (j > 0) ts += static_cast<std::int64_t>(std::llround(post_rng.exponential(forum.reply_gap_minutes * 60.0)));
      if (ts >= end_second) break;
      const int day = static_cast<int>((ts - first_second) / 86400);
      post_scheme.slice_start = regimes.slice_for(forum.start + std::chrono::days{day});
      RawPost p;
      for (int attempt = 0;; ++attempt) {
        if (attempt == 10'000) throw ConfigError("cannot avoid username collisions; population too small");
        p.address = address_on(post_rng.discrete(weights_cum), day);
        p.username = scheme::username_for(topic, p.address, post_scheme);
        auto [it, fresh] = seen.try_emplace({post_scheme.slice_start, p.username.value()}, p.address);
        if (fresh || it->second == p.address) break;
      }
      p.timestamp = ts;
      p.order = posts.size();
      p.topic = topic;
      posts.push_back(p);
    }
  }

  std::stable_sort(posts.begin(), posts.end(), [](const RawPost& x, const RawPost& y) {
    return x.timestamp != y.timestamp ? x.timestamp < y.timestamp : x.order < y.order;
  });
  std::vector<std::pair<std::uint64_t, Address>> truth;
  result.dump.reserve(posts.size());
  std::uint64_t next_post = forum.first_post_id;
  for (const RawPost& p : posts) {
    result.dump.push_back({next_post, p.topic, p.username, p.timestamp});
    truth.emplace_back(next_post, p.address);
    ++next_post;
  }
  result.truth = GroundTruth(std::move(truth));
  return result;
}

std::vector<std::pair<CidrRange, std::string>> planted_labels(const PopulationModel& population) {
  std::vector<std::pair<CidrRange, std::string>> out;
  for (const PoolRange& p : population.pool)
    if (!p.label.empty()) out.emplace_back(p.range, p.label);
  return out;
}

std::vector<std::pair<std::uint64_t, std::int64_t>> sample_anchors(const Dump& dump, double fraction,
                                                                   std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError("anchor fraction must be in [0, 1]");
  std::vector<std::pair<std::uint64_t, std::int64_t>> out;
  SplitMix64 rng = SplitMix64(seed).split(5);
  for (std::size_t i = 0; i < dump.size(); ++i) {
    const bool keep = rng.uniform() < fraction;
    if (keep || i == 0 || i + 1 == dump.size()) out.emplace_back(dump[i].post_id, dump[i].timestamp);
  }
  return out;
}

}  // namespace pseudaudit::synthgen
