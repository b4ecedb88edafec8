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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace pseudaudit {

/// An IPv4 endpoint as a 32-bit integer; the most significant byte is the
/// first dotted-decimal octet.
struct Address {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const Address&) const = default;
};

/// Longest dotted-decimal rendering, "255.255.255.255".
inline constexpr std::size_t kMaxDottedLength = 15;

/// Writes the dotted-decimal form of `address` into `out` (at least
/// kMaxDottedLength bytes) and returns the number of bytes written.
std::size_t render_dotted(Address address, char* out) noexcept;

std::string render_dotted(Address address);

/// Strict parse: four decimal octets in [0, 256), no leading zeros, no
/// surrounding whitespace.
std::optional<Address> parse_dotted(std::string_view text) noexcept;

/// Auto-incrementing topic key. Always >= 1.
struct TopicId {
  std::uint64_t value = 1;

  constexpr auto operator<=>(const TopicId&) const = default;
};

std::string to_string(TopicId topic);

/// A short lowercase hexadecimal pseudonym of `length` characters, stored as
/// its integer value (the first character is the most significant nibble).
class Username {
 public:
  Username() = default;
  Username(std::uint32_t value, int length);

  /// Throws ParseError unless `text` is 1..8 characters of [0-9a-f].
  static Username parse(std::string_view text);

  std::uint32_t value() const noexcept { return value_; }
  int length() const noexcept { return length_; }
  std::string text() const;

  auto operator<=>(const Username&) const = default;

 private:
  std::uint32_t value_ = 0;
  int length_ = 4;
};

}  // namespace pseudaudit

template <>
struct std::hash<pseudaudit::Address> {
  std::size_t operator()(pseudaudit::Address a) const noexcept {
    return std::hash<std::uint32_t>{}(a.value);
  }
};

template <>
struct std::hash<pseudaudit::TopicId> {
  std::size_t operator()(pseudaudit::TopicId t) const noexcept {
    return std::hash<std::uint64_t>{}(t.value);
  }
};
