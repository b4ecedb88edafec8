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

#include "pseudaudit/cidr.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pseudaudit/errors.hpp"

namespace pseudaudit {

CidrRange CidrRange::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw ParseError("CIDR range needs a '/prefix': '" + std::string(text) + "'");
  auto base = parse_dotted(text.substr(0, slash));
  if (!base) throw ParseError("bad CIDR base address: '" + std::string(text) + "'");
  std::string_view p = text.substr(slash + 1);
  int prefix = -1;
  auto [end, ec] = std::from_chars(p.data(), p.data() + p.size(), prefix);
  if (ec != std::errc{} || end != p.data() + p.size() || prefix < 0 || prefix > 32)
    throw ParseError("CIDR prefix length must be in [0, 32]: '" + std::string(text) + "'");
  const std::uint32_t host_mask = prefix == 0 ? 0xffffffffu : (0xffffffffu >> prefix);
  if ((base->value & host_mask) != 0)
    throw ParseError("CIDR base has bits set below the prefix: '" + std::string(text) + "'");
  return CidrRange{*base, prefix};
}

std::string CidrRange::to_string() const { return render_dotted(base) + "/" + std::to_string(prefix); }

CidrSet::CidrSet(std::span<const CidrRange> ranges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> v;
  v.reserve(ranges.size());
  for (const auto& r : ranges) v.emplace_back(r.first(), r.last());
  std::sort(v.begin(), v.end());
  for (const auto& [lo, hi] : v) {
    if (!intervals_.empty() && static_cast<std::uint64_t>(lo) <= std::uint64_t{intervals_.back().second} + 1)
      intervals_.back().second = std::max(intervals_.back().second, hi);
    else
      intervals_.emplace_back(lo, hi);
  }
}

bool CidrSet::contains(Address a) const noexcept {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), a.value,
                             [](std::uint32_t v, const auto& iv) { return v < iv.first; });
  if (it == intervals_.begin()) return false;
  return a.value <= std::prev(it)->second;
}

std::uint64_t CidrSet::covered() const noexcept {
  std::uint64_t n = 0;
  for (const auto& [lo, hi] : intervals_) n += std::uint64_t{hi} - lo + 1;
  return n;
}

std::vector<CidrRange> parse_cidr_list(std::string_view text) {
  std::vector<CidrRange> out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    try {
      out.push_back(CidrRange::parse(line.substr(b, e - b + 1)));
    } catch (const ParseError& err) {
      throw ParseError(err.what(), line_no);
    }
  }
  return out;
}

std::vector<CidrRange> load_cidr_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cidr_list(ss.str());
}

std::vector<CidrRange> default_bogons() {
  return parse_cidr_list(
      "0.0.0.0/8\n10.0.0.0/8\n100.64.0.0/10\n127.0.0.0/8\n169.254.0.0/16\n172.16.0.0/12\n"
      "192.0.0.0/24\n192.0.2.0/24\n192.88.99.0/24\n192.168.0.0/16\n198.18.0.0/15\n"
      "198.51.100.0/24\n203.0.113.0/24\n224.0.0.0/4\n240.0.0.0/4\n");
}

}  // namespace pseudaudit
