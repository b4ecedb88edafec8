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

#include "pseudaudit/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "pseudaudit/csv.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/scheme.hpp"

namespace pseudaudit::analytics {

namespace {

RankCounts from_addresses(const std::vector<std::uint32_t>& addresses) {
  std::unordered_map<std::uint32_t, std::uint64_t> n;
  for (std::uint32_t a : addresses) ++n[a];
  RankCounts rc;
  rc.counts.reserve(n.size());
  for (const auto& [a, c] : n) rc.counts.push_back(c);
  std::sort(rc.counts.begin(), rc.counts.end(), std::greater<>());
  return rc;
}

struct LinearFit {
  double a, b, rss;
};

// Least squares y = a - b x.
LinearFit regress(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  LinearFit f{my - slope * mx, -slope, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.a - f.b * x[i]);
    f.rss += r * r;
  }
  return f;
}

}  // namespace

RankCounts RankCounts::from_assignments(std::span<const attribute::AssignmentRecord> records) {
  std::vector<std::uint32_t> a;
  a.reserve(records.size());
  for (const auto& r : records) a.push_back(r.address.value);
  return from_addresses(a);
}

RankCounts RankCounts::from_truth(const GroundTruth& truth) {
  std::vector<std::uint32_t> a;
  a.reserve(truth.size());
  for (const auto& [id, addr] : truth.rows()) a.push_back(addr.value);
  return from_addresses(a);
}

std::uint64_t RankCounts::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

double concentration(const RankCounts& counts, double f) {
  if (counts.counts.empty()) throw UsageError("concentration of an empty count list");
  if (!(f > 0.0 && f <= 1.0)) throw UsageError("top fraction must be in (0, 1]");
  const auto n = counts.counts.size();
  // Guard against f * n landing a hair above an integer.
  auto top = static_cast<std::size_t>(std::ceil(f * static_cast<double>(n) - 1e-9));
  top = std::clamp<std::size_t>(top, 1, n);
  const std::uint64_t head = std::accumulate(counts.counts.begin(), counts.counts.begin() + static_cast<std::ptrdiff_t>(top),
                                             std::uint64_t{0});
  return static_cast<double>(head) / static_cast<double>(counts.total());
}

double StretchedExpFit::log_count(double rank) const noexcept { return a - b * std::pow(rank, c); }

StretchedExpFit fit_stretched_exponential(std::span<const double> counts, std::size_t ranks) {
  if (ranks < 3) throw UsageError("a stretched-exponential fit needs at least 3 ranks");
  if (ranks > counts.size()) throw UsageError("fit range exceeds the number of ranked addresses");
  std::vector<double> y(ranks), x(ranks);
  for (std::size_t i = 0; i < ranks; ++i) {
    if (!(counts[i] > 0.0)) throw UsageError("counts must be positive");
    y[i] = std::log(counts[i]);
  }
  auto at = [&](double c) {
    for (std::size_t i = 0; i < ranks; ++i) x[i] = std::pow(static_cast<double>(i + 1), c);
    return regress(x, y);
  };

  constexpr double kLow = 1e-6;
  constexpr int kGrid = 200;
  double best_c = 1.0, best_rss = at(1.0).rss;
  for (int g = 1; g < kGrid; ++g) {
    const double c = kLow + (1.0 - kLow) * g / kGrid;
    const double rss = at(c).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best_c = c;
    }
  }
  const double step = (1.0 - kLow) / kGrid;
  double lo = std::max(kLow, best_c - step), hi = std::min(1.0, best_c + step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = hi - inv_phi * (hi - lo), c2 = lo + inv_phi * (hi - lo);
  double f1 = at(c1).rss, f2 = at(c2).rss;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (f1 <= f2) {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - inv_phi * (hi - lo);
      f1 = at(c1).rss;
    } else {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + inv_phi * (hi - lo);
      f2 = at(c2).rss;
    }
  }
  double c = (lo + hi) / 2.0;
  // The search never lands exactly on the c = 1 boundary; keep it if better.
  if (at(1.0).rss <= at(c).rss) c = 1.0;
  const LinearFit lf = at(c);
  return {lf.a, lf.b, c, ranks, lf.rss};
}

StretchedExpFit fit_stretched_exponential(const RankCounts& counts, std::size_t ranks) {
  std::vector<double> d(counts.counts.begin(), counts.counts.end());
  return fit_stretched_exponential(d, ranks);
}

Extrapolation extrapolate_population(const StretchedExpFit& fit) {
  if (!(fit.b > 0.0) || !(fit.c > 0.0 && fit.c <= 1.0) || !std::isfinite(fit.a))
    throw DomainError("invalid stretched-exponential fit (need b > 0 and 0 < c <= 1)");
  Extrapolation e;
  if (fit.a < fit.b) return e;
  auto n = static_cast<std::uint64_t>(std::floor(std::pow(fit.a / fit.b, 1.0 / fit.c)));
  // Settle rounding at the boundary against the model itself.
  while (n > 0 && fit.log_count(static_cast<double>(n)) < 0.0) --n;
  while (fit.log_count(static_cast<double>(n + 1)) >= 0.0) ++n;
  e.n_star = n;
  for (std::uint64_t r = 1; r <= n; ++r) e.total_posts += std::exp(fit.log_count(static_cast<double>(r)));
  return e;
}

// ---------------------------------------------------------------------------

void LabelTable::add(const CidrRange& range, std::string label) {
  if (label.empty()) throw ConfigError("empty label for " + range.to_string());
  const auto key = std::make_pair(range.prefix, range.base.value);
  auto [it, inserted] = entries_.emplace(key, label);
  if (!inserted && it->second != label)
    throw ConfigError("range " + range.to_string() + " has two labels: " + it->second + ", " + label);
  if (std::find(prefixes_.begin(), prefixes_.end(), range.prefix) == prefixes_.end()) {
    prefixes_.push_back(range.prefix);
    std::sort(prefixes_.begin(), prefixes_.end(), std::greater<>());
  }
}

std::string LabelTable::lookup(Address a) const {
  for (int p : prefixes_) {
    const std::uint32_t mask = p == 0 ? 0u : 0xffffffffu << (32 - p);
    auto it = entries_.find({p, a.value & mask});
    if (it != entries_.end()) return it->second;
  }
  return {};
}

LabelTable LabelTable::load(const std::filesystem::path& path) {
  LabelTable t;
  for (const auto& rec : csv::read_file(path, {"cidr", "label"})) {
    try {
      t.add(CidrRange::parse(rec.fields[0]), rec.fields[1]);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), rec.line);
    }
  }
  return t;
}

LabelTable LabelTable::from(std::span<const std::pair<CidrRange, std::string>> entries) {
  LabelTable t;
  for (const auto& [r, l] : entries) t.add(r, l);
  return t;
}

std::vector<LabelShare> label_aggregate(std::span<const attribute::AssignmentRecord> records,
                                        const LabelTable& labels) {
  std::map<std::string, std::uint64_t> n;
  for (const auto& r : records) {
    std::string l = labels.lookup(r.address);
    ++n[l.empty() ? kUnlabeled : l];
  }
  std::vector<LabelShare> out;
  for (const auto& [label, posts] : n)
    out.push_back({label, posts, static_cast<double>(posts) / static_cast<double>(records.size())});
  return out;
}

std::vector<YearProfile> time_profile(std::span<const std::int64_t> timestamps, int bucket_minutes,
                                      int utc_offset_minutes) {
  if (bucket_minutes <= 0 || 1440 % bucket_minutes != 0) throw UsageError("bucket minutes must divide 1440");
  struct Acc {
    std::int64_t first_day = std::numeric_limits<std::int64_t>::max();
    std::int64_t last_day = std::numeric_limits<std::int64_t>::min();
    std::vector<std::uint64_t> counts;
  };
  std::map<int, Acc> years;
  const int buckets = 1440 / bucket_minutes;
  for (std::int64_t t : timestamps) {
    const std::int64_t local = t + std::int64_t{utc_offset_minutes} * 60;
    const scheme::Date d = scheme::date_of(local);
    const std::int64_t day = scheme::day_number(d);
    const int year = static_cast<int>(std::chrono::year_month_day{d}.year());
    Acc& acc = years[year];
    if (acc.counts.empty()) acc.counts.assign(static_cast<std::size_t>(buckets), 0);
    acc.first_day = std::min(acc.first_day, day);
    acc.last_day = std::max(acc.last_day, day);
    const std::int64_t minute = (local - day * 86400) / 60;
    ++acc.counts[static_cast<std::size_t>(minute / bucket_minutes)];
  }
  std::vector<YearProfile> out;
  for (const auto& [year, acc] : years) {
    YearProfile p;
    p.year = year;
    p.days = acc.last_day - acc.first_day + 1;
    for (std::uint64_t c : acc.counts)
      p.per_minute.push_back(static_cast<double>(c) / static_cast<double>(bucket_minutes * p.days));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace pseudaudit::analytics
