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

#include "pseudaudit/hash.hpp"

#include <bit>
#include <cstring>

#include "pseudaudit/errors.hpp"

namespace pseudaudit {

namespace {

inline std::uint32_t load_be32(const std::uint8_t* p) noexcept {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         std::uint32_t{p[3]};
}

inline std::uint32_t load_le32(const std::uint8_t* p) noexcept {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

inline void store_be32(std::uint8_t* p, std::uint32_t v) noexcept {
  p[0] = static_cast<std::uint8_t>(v >> 24);
  p[1] = static_cast<std::uint8_t>(v >> 16);
  p[2] = static_cast<std::uint8_t>(v >> 8);
  p[3] = static_cast<std::uint8_t>(v);
}

inline void store_le32(std::uint8_t* p, std::uint32_t v) noexcept {
  p[0] = static_cast<std::uint8_t>(v);
  p[1] = static_cast<std::uint8_t>(v >> 8);
  p[2] = static_cast<std::uint8_t>(v >> 16);
  p[3] = static_cast<std::uint8_t>(v >> 24);
}

// Shared Merkle-Damgard buffering for the two 64-byte-block hashes.
template <typename CompressFn, typename State>
void md_update(State& state, std::uint8_t (&buffer)[64], std::size_t& buffered, std::uint64_t& length,
               std::span<const std::uint8_t> data, CompressFn compress) noexcept {
  length += data.size();
  std::size_t i = 0;
  if (buffered > 0) {
    std::size_t take = std::min<std::size_t>(64 - buffered, data.size());
    std::memcpy(buffer + buffered, data.data(), take);
    buffered += take;
    i = take;
    if (buffered < 64) return;
    compress(state, buffer);
    buffered = 0;
  }
  for (; i + 64 <= data.size(); i += 64) compress(state, data.data() + i);
  std::memcpy(buffer, data.data() + i, data.size() - i);
  buffered = data.size() - i;
}

constexpr char kHex[] = "0123456789abcdef";

}  // namespace

HashAlgorithm parse_hash_algorithm(std::string_view id) {
  if (id == "sha1") return HashAlgorithm::sha1;
  if (id == "md5") return HashAlgorithm::md5;
  if (id == "first-letter") return HashAlgorithm::first_letter;
  if (id == "byte-sum") return HashAlgorithm::byte_sum;
  throw ConfigError("unsupported hash algorithm '" + std::string(id) + "'");
}

std::string_view to_string(HashAlgorithm algorithm) noexcept {
  switch (algorithm) {
    case HashAlgorithm::sha1: return "sha1";
    case HashAlgorithm::md5: return "md5";
    case HashAlgorithm::first_letter: return "first-letter";
    case HashAlgorithm::byte_sum: return "byte-sum";
  }
  return "unknown";
}

int digest_hex_length(HashAlgorithm algorithm) noexcept {
  return algorithm == HashAlgorithm::md5 ? 32 : 40;
}

// ---------------------------------------------------------------------------
// SHA-1

Sha1::Sha1() noexcept
    : state_{0x67452301u, 0xefcdab89u, 0x98badcfeu, 0x10325476u, 0xc3d2e1f0u}, buffer_{} {}

void Sha1::compress(std::uint32_t state[5], const std::uint8_t block[64]) noexcept {
  std::uint32_t w[80];
  for (int i = 0; i < 16; ++i) w[i] = load_be32(block + 4 * i);
  for (int i = 16; i < 80; ++i) w[i] = std::rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);

  std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3], e = state[4];
  for (int i = 0; i < 80; ++i) {
    std::uint32_t f, k;
    if (i < 20) {
      f = d ^ (b & (c ^ d));
      k = 0x5a827999u;
    } else if (i < 40) {
      f = b ^ c ^ d;
      k = 0x6ed9eba1u;
    } else if (i < 60) {
      f = (b & c) | (d & (b | c));
      k = 0x8f1bbcdcu;
    } else {
      f = b ^ c ^ d;
      k = 0xca62c1d6u;
    }
    std::uint32_t t = std::rotl(a, 5) + f + e + k + w[i];
    e = d;
    d = c;
    c = std::rotl(b, 30);
    b = a;
    a = t;
  }
  state[0] += a;
  state[1] += b;
  state[2] += c;
  state[3] += d;
  state[4] += e;
}

void Sha1::update(std::span<const std::uint8_t> data) noexcept {
  md_update(state_, buffer_, buffered_, length_, data,
            [](std::uint32_t* s, const std::uint8_t* blk) { compress(s, blk); });
}

void Sha1::update(std::string_view data) noexcept {
  update(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Sha1::Digest Sha1::finalize() noexcept {
  const std::uint64_t bits = length_ * 8;
  std::uint8_t pad[72] = {0x80};
  std::size_t pad_len = (buffered_ < 56) ? 56 - buffered_ : 120 - buffered_;
  for (int i = 0; i < 8; ++i) pad[pad_len + i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
  update(std::span<const std::uint8_t>(pad, pad_len + 8));
  Digest out;
  for (int i = 0; i < 5; ++i) store_be32(out.data() + 4 * i, state_[i]);
  return out;
}

Sha1::Digest Sha1::hash(std::string_view data) noexcept {
  Sha1 h;
  h.update(data);
  return h.finalize();
}

// ---------------------------------------------------------------------------
// MD5

namespace {

constexpr std::uint32_t kMd5K[64] = {
    0xd76aa478, 0xe8c7b756, 0x242070db, 0xc1bdceee, 0xf57c0faf, 0x4787c62a, 0xa8304613, 0xfd469501,
    0x698098d8, 0x8b44f7af, 0xffff5bb1, 0x895cd7be, 0x6b901122, 0xfd987193, 0xa679438e, 0x49b40821,
    0xf61e2562, 0xc040b340, 0x265e5a51, 0xe9b6c7aa, 0xd62f105d, 0x02441453, 0xd8a1e681, 0xe7d3fbc8,
    0x21e1cde6, 0xc33707d6, 0xf4d50d87, 0x455a14ed, 0xa9e3e905, 0xfcefa3f8, 0x676f02d9, 0x8d2a4c8a,
    0xfffa3942, 0x8771f681, 0x6d9d6122, 0xfde5380c, 0xa4beea44, 0x4bdecfa9, 0xf6bb4b60, 0xbebfbc70,
    0x289b7ec6, 0xeaa127fa, 0xd4ef3085, 0x04881d05, 0xd9d4d039, 0xe6db99e5, 0x1fa27cf8, 0xc4ac5665,
    0xf4292244, 0x432aff97, 0xab9423a7, 0xfc93a039, 0x655b59c3, 0x8f0ccc92, 0xffeff47d, 0x85845dd1,
    0x6fa87e4f, 0xfe2ce6e0, 0xa3014314, 0x4e0811a1, 0xf7537e82, 0xbd3af235, 0x2ad7d2bb, 0xeb86d391};

constexpr int kMd5S[64] = {7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22,
                           5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20,
                           4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23,
                           6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21};

}  // namespace

Md5::Md5() noexcept : state_{0x67452301u, 0xefcdab89u, 0x98badcfeu, 0x10325476u}, buffer_{} {}

void Md5::compress(std::uint32_t state[4], const std::uint8_t block[64]) noexcept {
  std::uint32_t m[16];
  for (int i = 0; i < 16; ++i) m[i] = load_le32(block + 4 * i);
  std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
  for (int i = 0; i < 64; ++i) {
    std::uint32_t f;
    int g;
    if (i < 16) {
      f = d ^ (b & (c ^ d));
      g = i;
    } else if (i < 32) {
      f = c ^ (d & (b ^ c));
      g = (5 * i + 1) & 15;
    } else if (i < 48) {
      f = b ^ c ^ d;
      g = (3 * i + 5) & 15;
    } else {
      f = c ^ (b | ~d);
      g = (7 * i) & 15;
    }
    std::uint32_t t = d;
    d = c;
    c = b;
    b = b + std::rotl(a + f + kMd5K[i] + m[g], kMd5S[i]);
    a = t;
  }
  state[0] += a;
  state[1] += b;
  state[2] += c;
  state[3] += d;
}

void Md5::update(std::span<const std::uint8_t> data) noexcept {
  md_update(state_, buffer_, buffered_, length_, data,
            [](std::uint32_t* s, const std::uint8_t* blk) { compress(s, blk); });
}

void Md5::update(std::string_view data) noexcept {
  update(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Md5::Digest Md5::finalize() noexcept {
  const std::uint64_t bits = length_ * 8;
  std::uint8_t pad[72] = {0x80};
  std::size_t pad_len = (buffered_ < 56) ? 56 - buffered_ : 120 - buffered_;
  for (int i = 0; i < 8; ++i) pad[pad_len + i] = static_cast<std::uint8_t>(bits >> (8 * i));
  update(std::span<const std::uint8_t>(pad, pad_len + 8));
  Digest out;
  for (int i = 0; i < 4; ++i) store_le32(out.data() + 4 * i, state_[i]);
  return out;
}

Md5::Digest Md5::hash(std::string_view data) noexcept {
  Md5 h;
  h.update(data);
  return h.finalize();
}

// ---------------------------------------------------------------------------

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string s(2 * bytes.size(), '0');
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    s[2 * i] = kHex[bytes[i] >> 4];
    s[2 * i + 1] = kHex[bytes[i] & 0xf];
  }
  return s;
}

std::string hex_digest(HashAlgorithm algorithm, std::string_view message) {
  switch (algorithm) {
    case HashAlgorithm::sha1: {
      auto d = Sha1::hash(message);
      return to_hex(d);
    }
    case HashAlgorithm::md5: {
      auto d = Md5::hash(message);
      return to_hex(d);
    }
    case HashAlgorithm::first_letter: {
      std::uint8_t first = message.empty() ? 0 : static_cast<std::uint8_t>(message.front());
      std::uint8_t d[20];
      std::memset(d, first, sizeof d);
      return to_hex(d);
    }
    case HashAlgorithm::byte_sum: {
      std::uint32_t sum = 0;
      for (char c : message) sum += static_cast<std::uint8_t>(c);
      std::uint8_t d[20];
      for (int i = 0; i < 5; ++i) store_be32(d + 4 * i, sum);
      return to_hex(d);
    }
  }
  throw ConfigError("unsupported hash algorithm");
}

}  // namespace pseudaudit
