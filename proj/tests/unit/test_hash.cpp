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

#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <random>
#include <string>

#include "pseudaudit/errors.hpp"
#include "pseudaudit/hash.hpp"

namespace pseudaudit {
namespace {

std::string openssl_hex(const EVP_MD* md, const std::string& msg) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(msg.data(), msg.size(), out, &len, md, nullptr);
  std::string hex;
  static const char* d = "0123456789abcdef";
  for (unsigned i = 0; i < len; ++i) {
    hex += d[out[i] >> 4];
    hex += d[out[i] & 15];
  }
  return hex;
}

TEST(Sha1, ReferenceVectors) {
  EXPECT_EQ(hex_digest(HashAlgorithm::sha1, "abc"), "a9993e364706816aba3e25717850c26c9cd0d89d");
  EXPECT_EQ(hex_digest(HashAlgorithm::sha1, ""), "da39a3ee5e6b4b0d3255bfef95601890afd80709");
  EXPECT_EQ(hex_digest(HashAlgorithm::sha1, "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"),
            "84983e441c3bd26ebaae4aa1f95129e5e54670f1");
  Sha1 h;
  const std::string block(1000, 'a');
  for (int i = 0; i < 1000; ++i) h.update(block);
  EXPECT_EQ(to_hex(h.finalize()), "34aa973cd4c4daa4f61eeb2bdbad27316534016f");
}

TEST(Md5, ReferenceVectors) {
  EXPECT_EQ(hex_digest(HashAlgorithm::md5, ""), "d41d8cd98f00b204e9800998ecf8427e");
  EXPECT_EQ(hex_digest(HashAlgorithm::md5, "abc"), "900150983cd24fb0d6963f7d28e17f72");
}

TEST(Sha1, MatchesOpenSslOnRandomLengths) {
  std::mt19937 rng(3);
  for (int len = 0; len < 300; ++len) {
    std::string msg(static_cast<std::size_t>(len), '\0');
    for (auto& c : msg) c = static_cast<char>(rng());
    ASSERT_EQ(hex_digest(HashAlgorithm::sha1, msg), openssl_hex(EVP_sha1(), msg)) << len;
    ASSERT_EQ(hex_digest(HashAlgorithm::md5, msg), openssl_hex(EVP_md5(), msg)) << len;
  }
}

TEST(Sha1, IncrementalEqualsOneShot) {
  const std::string msg = "227259131.111.5.175 and then some more bytes to cross a block boundary.....";
  for (std::size_t cut = 0; cut <= msg.size(); ++cut) {
    Sha1 h;
    h.update(std::string_view(msg).substr(0, cut));
    h.update(std::string_view(msg).substr(cut));
    ASSERT_EQ(to_hex(h.finalize()), hex_digest(HashAlgorithm::sha1, msg));
  }
}

TEST(HashAlgorithm, ParseNames) {
  EXPECT_EQ(parse_hash_algorithm("sha1"), HashAlgorithm::sha1);
  EXPECT_EQ(parse_hash_algorithm("md5"), HashAlgorithm::md5);
  EXPECT_EQ(parse_hash_algorithm("first-letter"), HashAlgorithm::first_letter);
  EXPECT_EQ(parse_hash_algorithm("byte-sum"), HashAlgorithm::byte_sum);
  EXPECT_THROW(parse_hash_algorithm("sha256"), ConfigError);
  EXPECT_EQ(digest_hex_length(HashAlgorithm::md5), 32);
  EXPECT_EQ(digest_hex_length(HashAlgorithm::sha1), 40);
}

TEST(ToyHashes, AreNotAvalanching) {
  // First-letter digests depend on one byte only.
  EXPECT_EQ(hex_digest(HashAlgorithm::first_letter, "2abc"), hex_digest(HashAlgorithm::first_letter, "2xyz"));
  EXPECT_EQ(hex_digest(HashAlgorithm::byte_sum, "12"), hex_digest(HashAlgorithm::byte_sum, "21"));
}

}  // namespace
}  // namespace pseudaudit
