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

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pseudaudit/address.hpp"
#include "pseudaudit/hash.hpp"

namespace pseudaudit::scheme {

/// The (hash, mix, slice, salt) choice that turns a topic and an address into
/// a username. The hashed message is decimal(topic) ++ salt ++ dotted(address).
///
/// Slice starts are 0-based character offsets into the hex digest, so the
/// production scheme's "characters 10-13" is slice_start 9.
struct SchemeConfig {
  HashAlgorithm hash = HashAlgorithm::sha1;
  std::string salt;
  int slice_start = 9;
  int username_len = 4;
  /// Enumerated address bits. Below 32 the space is [0, 2^A) offset into a
  /// single /8 whose first octet is `high_octet`; only A <= 24 is allowed
  /// then.
  int address_space_bits = 32;
  std::uint8_t high_octet = 0;

  int username_bits() const noexcept { return 4 * username_len; }
  std::uint64_t address_count() const noexcept { return std::uint64_t{1} << address_space_bits; }

  /// Full 32-bit address for index `i` in [0, address_count()).
  Address address_at(std::uint64_t i) const noexcept {
    if (address_space_bits == 32) return Address{static_cast<std::uint32_t>(i)};
    return Address{(std::uint32_t{high_octet} << 24) | static_cast<std::uint32_t>(i)};
  }

  /// True when `a` lies inside the configured space.
  bool contains(Address a) const noexcept {
    if (address_space_bits == 32) return true;
    return (a.value >> 24) == high_octet && (a.value & 0x00ffffffu) < address_count();
  }

  /// Throws ConfigError when the invariants are violated.
  void validate() const;
};

/// decimal(topic) ++ salt ++ dotted(address): the exact bytes that are hashed.
std::string hash_message(TopicId topic, Address address, std::string_view salt);

/// Lowercase hex digest of the hashed message.
std::string digest_for(TopicId topic, Address address, const SchemeConfig& config);

Username username_for(TopicId topic, Address address, const SchemeConfig& config);

/// Username read out of a hex digest at a 0-based slice.
Username slice_username(std::string_view hex_digest, int slice_start, int length);

// ---------------------------------------------------------------------------
// Calendar and slice regimes.

using Date = std::chrono::sys_days;

/// Parses YYYY-MM-DD. Throws ParseError.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// Date containing a Unix timestamp (UTC).
Date date_of(std::int64_t unix_seconds) noexcept;
std::int64_t day_number(Date date) noexcept;

/// One inclusive date range served by a single slice start.
struct Regime {
  Date first;
  Date last;
  int slice_start;
};

/// One or two admissible slice starts for a date. Two only on a cutoff date,
/// in which case `values[0]` is the outgoing regime's slice.
struct SliceChoice {
  std::array<int, 2> values{};
  int count = 0;

  const int* begin() const noexcept { return values.data(); }
  const int* end() const noexcept { return values.data() + count; }
  bool contains(int slice) const noexcept {
    for (int v : *this)
      if (v == slice) return true;
    return false;
  }
};

/// Contiguous, non-overlapping date ranges mapped to slice starts.
class SliceRegime {
 public:
  SliceRegime() = default;
  /// Throws ConfigError unless regimes are non-empty, ordered, each
  /// first <= last, and each next.first == previous.last + 1 day.
  explicit SliceRegime(std::vector<Regime> regimes);

  /// 2010-12-17..2013-07-07 -> 8, 2013-07-08..2023-05-17 -> 9.
  static SliceRegime production();
  /// Single regime covering [first, last].
  static SliceRegime constant(Date first, Date last, int slice_start);

  /// Lines of `start_date,end_date,slice_start`; '#' comments and blank lines
  /// are ignored. Throws ParseError with the line number.
  static SliceRegime parse(std::string_view text);
  static SliceRegime load(const std::filesystem::path& path);
  std::string to_text() const;

  const std::vector<Regime>& regimes() const noexcept { return regimes_; }
  Date first_date() const { return regimes_.front().first; }
  Date last_date() const { return regimes_.back().last; }

  /// Slice of the regime containing `date` (the incoming regime on a cutoff
  /// date). Throws RangeError outside the span.
  int slice_for(Date date) const;
  /// Both adjacent slices on a cutoff date, otherwise one.
  SliceChoice slices_for(Date date) const;

  /// Calibration position: one past the largest slice in use.
  int noise_slice() const;
  /// Sorted distinct slice starts in use.
  std::vector<int> slices_in_use() const;

  /// Same dates, every slice replaced by `slice_start`.
  SliceRegime with_constant_slice(int slice_start) const;

 private:
  std::vector<Regime> regimes_;
};

/// Free-function form of SliceRegime::slices_for.
inline SliceChoice regime_slice_for(Date date, const SliceRegime& regimes) {
  return regimes.slices_for(date);
}

}  // namespace pseudaudit::scheme
