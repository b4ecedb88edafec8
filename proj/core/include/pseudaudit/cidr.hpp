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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pseudaudit/address.hpp"

namespace pseudaudit {

/// base/prefix with no bits set below the prefix.
struct CidrRange {
  Address base;
  int prefix = 32;

  std::uint32_t first() const noexcept { return base.value; }
  std::uint32_t last() const noexcept {
    return prefix == 0 ? 0xffffffffu : base.value | (0xffffffffu >> prefix);
  }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << (32 - prefix); }
  bool contains(Address a) const noexcept { return a.value >= first() && a.value <= last(); }

  /// Throws ParseError on a malformed range or host bits set.
  static CidrRange parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const CidrRange&) const = default;
};

/// Union of CIDR ranges as sorted, merged, inclusive intervals.
class CidrSet {
 public:
  CidrSet() = default;
  explicit CidrSet(std::span<const CidrRange> ranges);

  bool contains(Address a) const noexcept;
  /// Number of distinct addresses covered.
  std::uint64_t covered() const noexcept;
  bool empty() const noexcept { return intervals_.empty(); }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& intervals() const noexcept { return intervals_; }

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> intervals_;
};

/// One CIDR per line; '#' starts a comment; blank lines ignored. ParseError
/// carries the 1-based line number.
std::vector<CidrRange> parse_cidr_list(std::string_view text);
std::vector<CidrRange> load_cidr_file(const std::filesystem::path& path);

/// The reserved IPv4 ranges of RFC 5735 plus the RFC 6598 shared space.
std::vector<CidrRange> default_bogons();

}  // namespace pseudaudit
