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

#include "kernels/batch_hash.hpp"

#include <cstring>

#include "pseudaudit/errors.hpp"

namespace pseudaudit::detail {

namespace {

SuffixTables build_tables(bool big_endian) {
  SuffixTables t{};
  for (int o = 0; o < 256; ++o) {
    std::uint8_t tail[4];
    int n = 0;
    if (o >= 100) tail[n++] = static_cast<std::uint8_t>('0' + o / 100);
    if (o >= 10) tail[n++] = static_cast<std::uint8_t>('0' + (o / 10) % 10);
    tail[n++] = static_cast<std::uint8_t>('0' + o % 10);
    t.digits[o] = static_cast<std::uint8_t>(n);
    tail[n++] = 0x80;
    for (int off = 0; off < 4; ++off) {
      std::uint32_t words[2] = {0, 0};
      for (int i = 0; i < n; ++i) {
        const int p = off + i;
        const int shift = big_endian ? 24 - 8 * (p % 4) : 8 * (p % 4);
        words[p / 4] |= std::uint32_t{tail[i]} << shift;
      }
      t.first[off][o] = words[0];
      t.second[off][o] = words[1];
    }
  }
  return t;
}

bool cpu_has(const char* isa) {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (std::strcmp(isa, "avx512") == 0) return __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512vl");
  if (std::strcmp(isa, "avx2") == 0) return __builtin_cpu_supports("avx2");
#endif
  return std::strcmp(isa, "generic") == 0;
}

constexpr KernelSet kGeneric{generic::sha1_block, generic::md5_block, "generic"};
#if defined(__x86_64__) || defined(__i386__)
constexpr KernelSet kAvx2{avx2::sha1_block, avx2::md5_block, "avx2"};
constexpr KernelSet kAvx512{avx512::sha1_block, avx512::md5_block, "avx512"};
#endif

}  // namespace

const SuffixTables& suffix_tables(HashAlgorithm algorithm) {
  static const SuffixTables be = build_tables(true);
  static const SuffixTables le = build_tables(false);
  return algorithm == HashAlgorithm::md5 ? le : be;
}

void prime_head(HashAlgorithm algorithm, std::span<const std::uint8_t> head, PrimedHead& primed) {
  if (head.size() > kMaxKernelHead) throw UsageError("head too long for the single-block kernel");
  std::uint8_t buf[64] = {};
  std::memcpy(buf, head.data(), head.size());
  const bool be = algorithm != HashAlgorithm::md5;
  for (int j = 0; j < 16; ++j) {
    const std::uint8_t* p = buf + 4 * j;
    primed.tmpl[j] = be ? (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
                              (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]}
                        : std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                              (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
  }
  primed.tail_word = static_cast<int>(head.size() / 4);
  primed.tail_offset = static_cast<int>(head.size() % 4);
  const SuffixTables& t = suffix_tables(algorithm);
  for (int o = 0; o < 256; ++o)
    primed.length_word[o] = static_cast<std::uint32_t>((head.size() + t.digits[o]) * 8);
}

const KernelSet& best_kernels() {
  static const KernelSet& best = [&]() -> const KernelSet& {
#if defined(__x86_64__) || defined(__i386__)
    if (cpu_has("avx512")) return kAvx512;
    if (cpu_has("avx2")) return kAvx2;
#endif
    return kGeneric;
  }();
  return best;
}

const KernelSet& kernels_named(const char* isa) {
  if (!cpu_has(isa)) throw ConfigError(std::string("kernel set unavailable on this CPU: ") + isa);
#if defined(__x86_64__) || defined(__i386__)
  if (std::strcmp(isa, "avx512") == 0) return kAvx512;
  if (std::strcmp(isa, "avx2") == 0) return kAvx2;
#endif
  return kGeneric;
}

void digest_words(HashAlgorithm algorithm, std::span<const std::uint8_t> message,
                  std::array<std::uint32_t, 6>& out) {
  out.fill(0);
  auto be_words = [&](const std::uint8_t* d, int n) {
    for (int i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] = (std::uint32_t{d[4 * i]} << 24) | (std::uint32_t{d[4 * i + 1]} << 16) |
                                         (std::uint32_t{d[4 * i + 2]} << 8) | std::uint32_t{d[4 * i + 3]};
  };
  switch (algorithm) {
    case HashAlgorithm::sha1: {
      Sha1 h;
      h.update(message);
      auto d = h.finalize();
      be_words(d.data(), 5);
      return;
    }
    case HashAlgorithm::md5: {
      Md5 h;
      h.update(message);
      auto d = h.finalize();
      be_words(d.data(), 4);
      return;
    }
    case HashAlgorithm::first_letter: {
      const std::uint32_t b = message.empty() ? 0 : message[0];
      const std::uint32_t w = b * 0x01010101u;
      for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(i)] = w;
      return;
    }
    case HashAlgorithm::byte_sum: {
      std::uint32_t sum = 0;
      for (std::uint8_t c : message) sum += c;
      for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(i)] = sum;
      return;
    }
  }
}

}  // namespace pseudaudit::detail
