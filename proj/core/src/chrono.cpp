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

#include "pseudaudit/chrono.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "pseudaudit/csv.hpp"
#include "pseudaudit/dump.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/scheme.hpp"

namespace pseudaudit::chrono {

AnchorSet::AnchorSet(std::vector<std::pair<std::uint64_t, std::int64_t>> anchors) : anchors_(std::move(anchors)) {
  for (std::size_t i = 1; i < anchors_.size(); ++i) {
    if (anchors_[i].first <= anchors_[i - 1].first)
      throw DataError("anchor post ids must strictly increase at post " + std::to_string(anchors_[i].first));
    if (anchors_[i].second <= anchors_[i - 1].second)
      throw DataError("anchor timestamps must strictly increase at post " + std::to_string(anchors_[i].first));
  }
}

AnchorSet AnchorSet::thinned(std::vector<std::pair<std::uint64_t, std::int64_t>> anchors) {
  std::sort(anchors.begin(), anchors.end());
  std::vector<std::pair<std::uint64_t, std::int64_t>> kept;
  for (const auto& a : anchors)
    if (kept.empty() || (a.first > kept.back().first && a.second > kept.back().second)) kept.push_back(a);
  return AnchorSet(std::move(kept));
}

bool AnchorSet::contains(std::uint64_t post_id) const {
  auto it = std::lower_bound(anchors_.begin(), anchors_.end(), post_id,
                             [](const auto& a, std::uint64_t id) { return a.first < id; });
  return it != anchors_.end() && it->first == post_id;
}

namespace {

double line(const std::pair<std::uint64_t, std::int64_t>& a, const std::pair<std::uint64_t, std::int64_t>& b,
            std::uint64_t id) {
  const double slope = static_cast<double>(b.second - a.second) / static_cast<double>(b.first - a.first);
  const double dx = id >= a.first ? static_cast<double>(id - a.first) : -static_cast<double>(a.first - id);
  return static_cast<double>(a.second) + slope * dx;
}

}  // namespace

double interpolate(const AnchorSet& anchors, std::uint64_t post_id) {
  const auto& v = anchors.anchors();
  if (v.empty()) throw UsageError("interpolation needs at least one anchor");
  if (v.size() == 1) return static_cast<double>(v[0].second);
  auto it = std::lower_bound(v.begin(), v.end(), post_id, [](const auto& a, std::uint64_t id) { return a.first < id; });
  if (it != v.end() && it->first == post_id) return static_cast<double>(it->second);
  if (it == v.begin()) return std::min(line(v[0], v[1], post_id), static_cast<double>(v[0].second));
  if (it == v.end()) {
    const auto& last = v.back();
    return std::max(line(v[v.size() - 2], last, post_id), static_cast<double>(last.second));
  }
  return line(*std::prev(it), *it, post_id);
}

GapStats gap_stats(const AnchorSet& anchors, std::span<const std::uint64_t> post_ids) {
  GapStats s;
  const auto& v = anchors.anchors();
  std::vector<double> gaps;
  for (std::uint64_t id : post_ids) {
    auto it =
        std::lower_bound(v.begin(), v.end(), id, [](const auto& a, std::uint64_t x) { return a.first < x; });
    if (it != v.end() && it->first == id) continue;
    if (it == v.begin() || it == v.end()) {
      ++s.outside;
      continue;
    }
    gaps.push_back(static_cast<double>(it->second - std::prev(it)->second));
  }
  s.bracketed = gaps.size();
  if (gaps.empty()) return s;
  std::sort(gaps.begin(), gaps.end());
  double sum = 0;
  for (double g : gaps) sum += g;
  s.mean = sum / static_cast<double>(gaps.size());
  const auto rank = [&](double q) {
    const auto r = static_cast<std::size_t>(std::ceil(q * static_cast<double>(gaps.size())));
    return gaps[std::max<std::size_t>(r, 1) - 1];
  };
  s.p95 = rank(0.95);
  s.p99 = rank(0.99);
  return s;
}

std::string format_iso8601(std::int64_t unix_seconds) {
  const scheme::Date d = scheme::date_of(unix_seconds);
  const std::int64_t sod = unix_seconds - scheme::day_number(d) * 86400;
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                static_cast<int>(sod % 60));
  return scheme::format_date(d) + buf;
}

std::int64_t parse_iso8601(std::string_view text) {
  auto bad = [&] { return ParseError("expected YYYY-MM-DDTHH:MM:SS[Z|+HH:MM], got '" + std::string(text) + "'"); };
  if (text.size() < 19 || (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') throw bad();
  const scheme::Date date = [&] {
    try {
      return scheme::parse_date(text.substr(0, 10));
    } catch (const ParseError&) {
      throw bad();
    }
  }();
  auto num = [&](std::size_t pos, int max) {
    int v = 0;
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + pos + 2, v);
    if (ec != std::errc{} || p != text.data() + pos + 2 || v > max) throw bad();
    return v;
  };
  const int h = num(11, 23), m = num(14, 59), s = num(17, 60);
  std::int64_t offset = 0;
  const std::string_view tz = text.substr(19);
  if (tz.empty() || tz == "Z") {
  } else if (tz.size() == 6 && (tz[0] == '+' || tz[0] == '-') && tz[3] == ':') {
    offset = (num(20, 23) * 3600 + num(23, 59) * 60) * (tz[0] == '-' ? -1 : 1);
  } else {
    throw bad();
  }
  return scheme::day_number(date) * 86400 + h * 3600 + m * 60 + s - offset;
}

void write_anchors(const std::filesystem::path& path, const AnchorSet& anchors, std::string_view header) {
  std::ostringstream out;
  out << header << "post_id,timestamp_iso8601\n";
  for (const auto& [id, t] : anchors.anchors()) out << id << ',' << format_iso8601(t) << '\n';
  write_file_atomic(path, out.str());
}

AnchorSet read_anchors(const std::filesystem::path& path) {
  std::vector<std::pair<std::uint64_t, std::int64_t>> rows;
  for (const auto& rec : csv::read_file(path, {"post_id", "timestamp_iso8601"})) {
    std::uint64_t id = 0;
    const std::string& f = rec.fields[0];
    auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), id);
    if (ec != std::errc{} || p != f.data() + f.size()) throw ParseError("bad post_id '" + f + "'", rec.line);
    try {
      rows.emplace_back(id, parse_iso8601(rec.fields[1]));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), rec.line);
    }
  }
  return AnchorSet(std::move(rows));
}

}  // namespace pseudaudit::chrono
