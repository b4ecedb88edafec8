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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pseudaudit {

/// Hash functions the username scheme can be configured with. Only sha1 is
/// the real scheme; the others exist for falsification runs and negative
/// controls.
enum class HashAlgorithm {
  sha1,
  md5,
  /// Every digest byte is the first message byte. No avalanche at all.
  first_letter,
  /// The 32-bit sum of message bytes, big-endian, repeated to 20 bytes.
  byte_sum,
};

/// Throws ConfigError on an unknown identifier.
HashAlgorithm parse_hash_algorithm(std::string_view id);
std::string_view to_string(HashAlgorithm algorithm) noexcept;

/// Number of hexadecimal characters in the algorithm's digest.
int digest_hex_length(HashAlgorithm algorithm) noexcept;

/// Incremental SHA-1 (FIPS 180-1).
class Sha1 {
 public:
  static constexpr std::size_t kDigestSize = 20;
  using Digest = std::array<std::uint8_t, kDigestSize>;

  Sha1() noexcept;

  void update(std::span<const std::uint8_t> data) noexcept;
  void update(std::string_view data) noexcept;
  Digest finalize() noexcept;

  static Digest hash(std::string_view data) noexcept;

  /// One compression over a 64-byte block. Exposed for the batch kernels'
  /// reference checks.
  static void compress(std::uint32_t state[5], const std::uint8_t block[64]) noexcept;

 private:
  std::uint32_t state_[5];
  std::uint64_t length_ = 0;
  std::uint8_t buffer_[64];
  std::size_t buffered_ = 0;
};

/// Incremental MD5 (RFC 1321).
class Md5 {
 public:
  static constexpr std::size_t kDigestSize = 16;
  using Digest = std::array<std::uint8_t, kDigestSize>;

  Md5() noexcept;

  void update(std::span<const std::uint8_t> data) noexcept;
  void update(std::string_view data) noexcept;
  Digest finalize() noexcept;

  static Digest hash(std::string_view data) noexcept;

  static void compress(std::uint32_t state[4], const std::uint8_t block[64]) noexcept;

 private:
  std::uint32_t state_[4];
  std::uint64_t length_ = 0;
  std::uint8_t buffer_[64];
  std::size_t buffered_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Lowercase hexadecimal digest of `message` under `algorithm`.
std::string hex_digest(HashAlgorithm algorithm, std::string_view message);

}  // namespace pseudaudit
