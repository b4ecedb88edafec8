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

// Batch digest kernels used by the enumeration engine. Not installed.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "pseudaudit/hash.hpp"

namespace pseudaudit::detail {

/// Longest head (topic ++ salt ++ "a.b.c.") the single-block kernels accept:
/// head + 3 octet digits + the 0x80 pad byte must leave 8 bytes for length.
inline constexpr std::size_t kMaxKernelHead = 52;

/// Digest words for the 256 messages head ++ decimal(o), o = 0..255, in
/// structure-of-arrays order. words[w][o] is big-endian digest word w; word 5
/// (and word 4 for MD5) is zero so slice extraction may read one word past
/// the digest.
struct DigestBlock {
  alignas(64) std::uint32_t words[6][256];
};

/// A head primed for one 256-address block: the message template with the
/// head bytes laid out in hash word order and the per-suffix length words.
struct PrimedHead {
  alignas(64) std::uint32_t tmpl[16];
  alignas(64) std::uint32_t length_word[256];
  int tail_word = 0;    // index of the first word touched by the suffix
  int tail_offset = 0;  // byte offset of the suffix inside that word
};

/// Precomputed suffix encodings: the decimal digits of o followed by 0x80,
/// shifted to each of the four byte offsets and split across two words.
struct SuffixTables {
  alignas(64) std::uint32_t first[4][256];
  alignas(64) std::uint32_t second[4][256];
  std::uint8_t digits[256];
};

const SuffixTables& suffix_tables(HashAlgorithm algorithm);

/// Fills `primed` for `head` (size <= kMaxKernelHead). Only sha1 and md5.
void prime_head(HashAlgorithm algorithm, std::span<const std::uint8_t> head, PrimedHead& primed);

using BlockKernel = void (*)(const PrimedHead& primed, const SuffixTables& tables, DigestBlock& out);

struct KernelSet {
  BlockKernel sha1;
  BlockKernel md5;
  const char* isa;
};

/// Widest kernel set the running CPU supports.
const KernelSet& best_kernels();
/// Kernel set by name ("avx512", "avx2", "generic"); throws ConfigError if
/// the CPU lacks the instructions.
const KernelSet& kernels_named(const char* isa);

// Per-ISA entry points, defined in batch_kernel_*.cpp.
namespace generic {
void sha1_block(const PrimedHead&, const SuffixTables&, DigestBlock&);
void md5_block(const PrimedHead&, const SuffixTables&, DigestBlock&);
}  // namespace generic
namespace avx2 {
void sha1_block(const PrimedHead&, const SuffixTables&, DigestBlock&);
void md5_block(const PrimedHead&, const SuffixTables&, DigestBlock&);
}  // namespace avx2
namespace avx512 {
void sha1_block(const PrimedHead&, const SuffixTables&, DigestBlock&);
void md5_block(const PrimedHead&, const SuffixTables&, DigestBlock&);
}  // namespace avx512

/// Scalar big-endian digest words for any algorithm (words past the digest
/// are zero). Used for long heads and the toy hashes.
void digest_words(HashAlgorithm algorithm, std::span<const std::uint8_t> message,
                  std::array<std::uint32_t, 6>& out);

}  // namespace pseudaudit::detail
