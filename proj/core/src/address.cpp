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

#include "pseudaudit/address.hpp"

#include <charconv>

#include "pseudaudit/errors.hpp"

namespace pseudaudit {

namespace {

std::size_t put_octet(unsigned v, char* out) noexcept {
  if (v >= 100) {
    out[0] = static_cast<char>('0' + v / 100);
    out[1] = static_cast<char>('0' + (v / 10) % 10);
    out[2] = static_cast<char>('0' + v % 10);
    return 3;
  }
  if (v >= 10) {
    out[0] = static_cast<char>('0' + v / 10);
    out[1] = static_cast<char>('0' + v % 10);
    return 2;
  }
  out[0] = static_cast<char>('0' + v);
  return 1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

std::size_t render_dotted(Address address, char* out) noexcept {
  std::size_t n = 0;
  for (int shift = 24; shift >= 0; shift -= 8) {
    n += put_octet((address.value >> shift) & 0xffu, out + n);
    if (shift != 0) out[n++] = '.';
  }
  return n;
}

std::string render_dotted(Address address) {
  char buf[kMaxDottedLength];
  return std::string(buf, render_dotted(address, buf));
}

std::optional<Address> parse_dotted(std::string_view text) noexcept {
  std::uint32_t value = 0;
  const char* p = text.data();
  const char* end = p + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (p == end || *p != '.') return std::nullopt;
      ++p;
    }
    const char* start = p;
    unsigned v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || next == start || v > 255) return std::nullopt;
    if (next - start > 1 && *start == '0') return std::nullopt;
    value = (value << 8) | v;
    p = next;
  }
  if (p != end) return std::nullopt;
  return Address{value};
}

std::string to_string(TopicId topic) { return std::to_string(topic.value); }

Username::Username(std::uint32_t value, int length) : value_(value), length_(length) {
  if (length < 1 || length > 8) throw UsageError("username length must be in [1, 8]");
  if (length < 8 && value >= (std::uint32_t{1} << (4 * length)))
    throw UsageError("username value does not fit its length");
}

Username Username::parse(std::string_view text) {
  if (text.empty() || text.size() > 8)
    throw ParseError("username must be 1..8 hex characters: '" + std::string(text) + "'");
  std::uint32_t v = 0;
  for (char c : text) {
    std::uint32_t nibble;
    if (c >= '0' && c <= '9')
      nibble = static_cast<std::uint32_t>(c - '0');
    else if (c >= 'a' && c <= 'f')
      nibble = static_cast<std::uint32_t>(c - 'a' + 10);
    else
      throw ParseError("username has a non-lowercase-hex character: '" + std::string(text) + "'");
    v = (v << 4) | nibble;
  }
  return Username(v, static_cast<int>(text.size()));
}

std::string Username::text() const {
  std::string s(static_cast<std::size_t>(length_), '0');
  std::uint32_t v = value_;
  for (int i = length_ - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = kHexDigits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace pseudaudit
