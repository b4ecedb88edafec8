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

#include "pseudaudit/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pseudaudit/errors.hpp"

namespace pseudaudit::scheme {

void SchemeConfig::validate() const {
  if (username_len < 1 || username_len > 6)
    throw ConfigError("username_len must be in [1, 6]");
  const int digest_len = digest_hex_length(hash);
  if (slice_start < 0 || slice_start + username_len > digest_len)
    throw ConfigError("slice_start " + std::to_string(slice_start) + " + username_len " +
                      std::to_string(username_len) + " exceeds the " + std::to_string(digest_len) +
                      "-character digest");
  if (address_space_bits != 32 && (address_space_bits < 1 || address_space_bits > 24))
    throw ConfigError("address_space_bits must be 32 or in [1, 24]");
}

std::string hash_message(TopicId topic, Address address, std::string_view salt) {
  std::string msg = to_string(topic);
  msg.append(salt);
  msg.append(render_dotted(address));
  return msg;
}

std::string digest_for(TopicId topic, Address address, const SchemeConfig& config) {
  return hex_digest(config.hash, hash_message(topic, address, config.salt));
}

Username slice_username(std::string_view hex_digest, int slice_start, int length) {
  if (slice_start < 0 || static_cast<std::size_t>(slice_start + length) > hex_digest.size())
    throw ConfigError("slice outside digest");
  return Username::parse(hex_digest.substr(static_cast<std::size_t>(slice_start),
                                           static_cast<std::size_t>(length)));
}

Username username_for(TopicId topic, Address address, const SchemeConfig& config) {
  config.validate();
  return slice_username(digest_for(topic, address, config), config.slice_start, config.username_len);
}

// ---------------------------------------------------------------------------

Date parse_date(std::string_view text) {
  using namespace std::chrono;
  auto bad = [&] { return ParseError("expected YYYY-MM-DD, got '" + std::string(text) + "'"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0, d = 0;
  auto ok = [](std::from_chars_result r, const char* end) { return r.ec == std::errc{} && r.ptr == end; };
  if (!ok(std::from_chars(text.data(), text.data() + 4, y), text.data() + 4) ||
      !ok(std::from_chars(text.data() + 5, text.data() + 7, m), text.data() + 7) ||
      !ok(std::from_chars(text.data() + 8, text.data() + 10, d), text.data() + 10))
    throw bad();
  year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) throw bad();
  return sys_days{ymd};
}

std::string format_date(Date date) {
  using namespace std::chrono;
  year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date date_of(std::int64_t unix_seconds) noexcept {
  std::int64_t day = unix_seconds / 86400;
  if (unix_seconds % 86400 < 0) --day;
  return Date{std::chrono::days{day}};
}

std::int64_t day_number(Date date) noexcept { return date.time_since_epoch().count(); }

SliceRegime::SliceRegime(std::vector<Regime> regimes) : regimes_(std::move(regimes)) {
  if (regimes_.empty()) throw ConfigError("regime table is empty");
  for (std::size_t i = 0; i < regimes_.size(); ++i) {
    const Regime& r = regimes_[i];
    if (r.first > r.last) throw ConfigError("regime starts after it ends: " + format_date(r.first));
    if (r.slice_start < 0) throw ConfigError("negative slice_start in regime table");
    if (i > 0 && r.first != regimes_[i - 1].last + std::chrono::days{1})
      throw ConfigError("regimes must be contiguous and non-overlapping at " + format_date(r.first));
  }
}

SliceRegime SliceRegime::production() {
  return SliceRegime({{parse_date("2010-12-17"), parse_date("2013-07-07"), 8},
                      {parse_date("2013-07-08"), parse_date("2023-05-17"), 9}});
}

SliceRegime SliceRegime::constant(Date first, Date last, int slice_start) {
  return SliceRegime({{first, last, slice_start}});
}

SliceRegime SliceRegime::parse(std::string_view text) {
  std::vector<Regime> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first_non_space = line.find_first_not_of(" \t");
    if (first_non_space == std::string_view::npos || line[first_non_space] == '#') continue;
    auto c1 = line.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw ParseError("expected start_date,end_date,slice_start", line_no);
    try {
      Regime r;
      r.first = parse_date(line.substr(0, c1));
      r.last = parse_date(line.substr(c1 + 1, c2 - c1 - 1));
      std::string_view s = line.substr(c2 + 1);
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), r.slice_start);
      if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError("bad slice_start");
      out.push_back(r);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  try {
    return SliceRegime(std::move(out));
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
}

SliceRegime SliceRegime::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open regime table " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string SliceRegime::to_text() const {
  std::string out;
  for (const Regime& r : regimes_)
    out += format_date(r.first) + "," + format_date(r.last) + "," + std::to_string(r.slice_start) + "\n";
  return out;
}

int SliceRegime::slice_for(Date date) const {
  if (regimes_.empty() || date < first_date() || date > last_date())
    throw RangeError("date " + format_date(date) + " outside the regime table span");
  auto it = std::upper_bound(regimes_.begin(), regimes_.end(), date,
                             [](Date d, const Regime& r) { return d < r.first; });
  return std::prev(it)->slice_start;
}

SliceChoice SliceRegime::slices_for(Date date) const {
  SliceChoice choice;
  if (regimes_.empty() || date < first_date() || date > last_date())
    throw RangeError("date " + format_date(date) + " outside the regime table span");
  auto it = std::upper_bound(regimes_.begin(), regimes_.end(), date,
                             [](Date d, const Regime& r) { return d < r.first; });
  auto cur = std::prev(it);
  if (cur != regimes_.begin() && cur->first == date && std::prev(cur)->slice_start != cur->slice_start) {
    choice.values[choice.count++] = std::prev(cur)->slice_start;
  }
  choice.values[choice.count++] = cur->slice_start;
  return choice;
}

int SliceRegime::noise_slice() const {
  int hi = 0;
  for (const Regime& r : regimes_) hi = std::max(hi, r.slice_start);
  return hi + 1;
}

std::vector<int> SliceRegime::slices_in_use() const {
  std::vector<int> s;
  for (const Regime& r : regimes_) s.push_back(r.slice_start);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

SliceRegime SliceRegime::with_constant_slice(int slice_start) const {
  return SliceRegime::constant(first_date(), last_date(), slice_start);
}

}  // namespace pseudaudit::scheme
