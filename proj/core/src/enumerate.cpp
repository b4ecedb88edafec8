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

#include "pseudaudit/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <memory>

#include "kernels/batch_hash.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/parallel.hpp"

namespace pseudaudit::enumerate {

namespace {

using scheme::SchemeConfig;

// Produces the digests of one 256-address block at a time. The topic prefix
// (decimal topic id ++ salt) is written once; per block only the "a.b.c."
// part of the head is rewritten and re-primed.
class BlockHasher {
 public:
  BlockHasher(const SchemeConfig& config, std::string_view prefix)
      : config_(config),
        fast_(config.hash == HashAlgorithm::sha1 || config.hash == HashAlgorithm::md5),
        kernel_(fast_ ? (config.hash == HashAlgorithm::sha1 ? detail::best_kernels().sha1
                                                            : detail::best_kernels().md5)
                      : nullptr),
        tables_(&detail::suffix_tables(config.hash)) {
    head_.assign(prefix.begin(), prefix.end());
    prefix_len_ = head_.size();
    head_.resize(prefix_len_ + kMaxDottedLength + 1);
    if (prefix_len_ + 12 > detail::kMaxKernelHead) fast_ = false;
  }

  std::uint64_t block_count() const noexcept { return (config_.address_count() + 255) / 256; }

  /// Hashes block `b`; returns the number of valid addresses in it and sets
  /// `base` to the address of its first entry.
  std::size_t hash(std::uint64_t b, detail::DigestBlock& out, std::uint32_t& base) {
    base = config_.address_at(b * 256).value;
    const std::uint64_t remaining = config_.address_count() - b * 256;
    const std::size_t count = remaining < 256 ? static_cast<std::size_t>(remaining) : 256;

    // head = prefix ++ "o1.o2.o3."
    char dotted[kMaxDottedLength];
    std::size_t n = render_dotted(Address{base}, dotted);
    while (n > 0 && dotted[n - 1] != '.') --n;  // drop the last octet
    std::memcpy(head_.data() + prefix_len_, dotted, n);
    const std::size_t head_len = prefix_len_ + n;

    if (fast_) {
      detail::prime_head(config_.hash, std::span(head_.data(), head_len), primed_);
      kernel_(primed_, *tables_, out);
      return count;
    }
    std::array<std::uint32_t, 6> words;
    std::uint8_t msg[256];
    std::memcpy(msg, head_.data(), head_len);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t len = head_len;
      const unsigned o = static_cast<unsigned>(i);
      if (o >= 100) msg[len++] = static_cast<std::uint8_t>('0' + o / 100);
      if (o >= 10) msg[len++] = static_cast<std::uint8_t>('0' + (o / 10) % 10);
      msg[len++] = static_cast<std::uint8_t>('0' + o % 10);
      detail::digest_words(config_.hash, std::span<const std::uint8_t>(msg, len), words);
      for (int w = 0; w < 6; ++w) out.words[w][i] = words[static_cast<std::size_t>(w)];
    }
    return count;
  }

 private:
  const SchemeConfig& config_;
  bool fast_;
  detail::BlockKernel kernel_;
  const detail::SuffixTables* tables_;
  std::vector<std::uint8_t> head_;
  std::size_t prefix_len_ = 0;
  detail::PrimedHead primed_;
};

// Reads the `bits`-wide username at a nibble offset out of SoA digest words.
struct SliceReader {
  int word = 0;
  int shift = 0;
  int bits = 16;

  SliceReader(int slice_start, int username_len)
      : word(4 * slice_start / 32), shift(4 * slice_start % 32), bits(4 * username_len) {}

  void read(const detail::DigestBlock& block, std::size_t count, std::uint32_t* values) const {
    const std::uint32_t* hi = block.words[word];
    const std::uint32_t* lo = block.words[word + 1];
    const int drop = 64 - bits;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t x = (std::uint64_t{hi[i]} << 32) | lo[i];
      values[i] = static_cast<std::uint32_t>((x << shift) >> drop);
    }
  }
};

// A 2^U membership bitmap plus username -> output bucket table.
class SliceMatcher {
 public:
  SliceMatcher(int slice_start, int username_len, std::span<const Username> usernames)
      : reader_(slice_start, username_len),
        bitmap_((std::size_t{1} << (4 * username_len)) / 64 + 1, 0),
        bucket_(std::size_t{1} << (4 * username_len), -1) {
    for (std::size_t i = 0; i < usernames.size(); ++i) {
      const std::uint32_t v = usernames[i].value();
      bitmap_[v >> 6] |= std::uint64_t{1} << (v & 63);
      bucket_[v] = static_cast<std::int32_t>(i);
    }
  }

  template <typename OnHit>
  void match(const detail::DigestBlock& block, std::size_t count, std::uint32_t base, OnHit&& on_hit) const {
    alignas(64) std::uint32_t values[256];
    reader_.read(block, count, values);
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint32_t v = values[i];
      if ((bitmap_[v >> 6] >> (v & 63)) & 1u) on_hit(bucket_[v], base + static_cast<std::uint32_t>(i));
    }
  }

 private:
  SliceReader reader_;
  std::vector<std::uint64_t> bitmap_;
  std::vector<std::int32_t> bucket_;
};

std::string topic_prefix(TopicId topic, const SchemeConfig& config) {
  return to_string(topic) + config.salt;
}

void check_slice(const SchemeConfig& config, int slice_start) {
  SchemeConfig c = config;
  c.slice_start = slice_start;
  c.validate();
}

}  // namespace

void TopicWorkOrder::normalize() {
  std::sort(usernames.begin(), usernames.end());
  usernames.erase(std::unique(usernames.begin(), usernames.end()), usernames.end());
  std::sort(slice_starts.begin(), slice_starts.end());
  slice_starts.erase(std::unique(slice_starts.begin(), slice_starts.end()), slice_starts.end());
}

std::vector<CandidateSet> candidates_for_topic(const TopicWorkOrder& raw_order, const SchemeConfig& config,
                                               const ScanOptions& options) {
  TopicWorkOrder order = raw_order;
  order.normalize();
  if (order.usernames.empty() || order.slice_starts.empty()) return {};
  if (order.topic.value == 0) throw UsageError("topic ids start at 1");
  for (int s : order.slice_starts) check_slice(config, s);
  for (const Username& u : order.usernames)
    if (u.length() != config.username_len)
      throw UsageError("username '" + u.text() + "' does not match username_len");

  std::vector<SliceMatcher> matchers;
  matchers.reserve(order.slice_starts.size());
  for (int s : order.slice_starts) matchers.emplace_back(s, config.username_len, order.usernames);

  const std::string prefix = topic_prefix(order.topic, config);
  const std::uint64_t blocks = BlockHasher(config, prefix).block_count();
  const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_blocks);
  const std::size_t chunks = static_cast<std::size_t>((blocks + chunk - 1) / chunk);
  const std::size_t n_slices = matchers.size();
  const std::size_t n_users = order.usernames.size();

  // [chunk][slice * n_users + username] -> addresses found in that chunk.
  std::vector<std::vector<std::vector<std::uint32_t>>> partial(chunks);
  const unsigned workers = resolve_workers(options.workers);
  std::vector<std::unique_ptr<detail::DigestBlock>> scratch(workers);
  std::vector<std::unique_ptr<BlockHasher>> hashers(workers);

  parallel_for(chunks, workers, [&](std::size_t c, unsigned w) {
    if (!scratch[w]) {
      scratch[w] = std::make_unique<detail::DigestBlock>();
      hashers[w] = std::make_unique<BlockHasher>(config, prefix);
    }
    auto& out = partial[c];
    out.assign(n_slices * n_users, {});
    const std::uint64_t first = c * chunk;
    const std::uint64_t last = std::min(blocks, first + chunk);
    std::uint32_t base = 0;
    for (std::uint64_t b = first; b < last; ++b) {
      const std::size_t count = hashers[w]->hash(b, *scratch[w], base);
      for (std::size_t s = 0; s < n_slices; ++s) {
        auto* row = out.data() + s * n_users;
        matchers[s].match(*scratch[w], count, base,
                          [row](std::int32_t bucket, std::uint32_t addr) { row[bucket].push_back(addr); });
      }
    }
  });

  std::vector<CandidateSet> result;
  result.reserve(n_slices * n_users);
  for (std::size_t s = 0; s < n_slices; ++s) {
    for (std::size_t u = 0; u < n_users; ++u) {
      CandidateSet set{order.topic, order.usernames[u], order.slice_starts[s], {}};
      std::size_t total = 0;
      for (const auto& part : partial) total += part[s * n_users + u].size();
      set.addresses.reserve(total);
      // Chunks cover increasing address ranges, so concatenation is sorted.
      for (const auto& part : partial) {
        const auto& v = part[s * n_users + u];
        set.addresses.insert(set.addresses.end(), v.begin(), v.end());
      }
      result.push_back(std::move(set));
    }
  }
  return result;
}

std::vector<std::uint32_t> intersect(std::span<const std::vector<std::uint32_t>> sets) {
  if (sets.empty()) throw UsageError("intersect needs at least one set");
  std::vector<std::uint32_t> acc = sets[0];
  std::vector<std::uint32_t> next;
  for (std::size_t i = 1; i < sets.size() && !acc.empty(); ++i) {
    next.clear();
    std::set_intersection(acc.begin(), acc.end(), sets[i].begin(), sets[i].end(), std::back_inserter(next));
    acc.swap(next);
  }
  return acc;
}

std::vector<std::uint32_t> intersect(std::span<const CandidateSet> sets) {
  std::vector<std::vector<std::uint32_t>> raw;
  raw.reserve(sets.size());
  for (const auto& s : sets) raw.push_back(s.addresses);
  return intersect(std::span<const std::vector<std::uint32_t>>(raw));
}

std::vector<Address> find_suffix_preimages(std::string_view prefix, std::string_view digest_hex,
                                           int fixed_last_octet, const ScanOptions& options) {
  if (fixed_last_octet < 0 || fixed_last_octet > 255) throw UsageError("last octet must be in [0, 256)");
  if (digest_hex.size() != 40) throw UsageError("expected a 40-character SHA-1 digest");
  std::array<std::uint32_t, 5> target{};
  for (int i = 0; i < 40; ++i) {
    const char c = digest_hex[static_cast<std::size_t>(i)];
    std::uint32_t nib;
    if (c >= '0' && c <= '9') nib = static_cast<std::uint32_t>(c - '0');
    else if (c >= 'a' && c <= 'f') nib = static_cast<std::uint32_t>(c - 'a' + 10);
    else throw UsageError("digest must be lowercase hex");
    target[static_cast<std::size_t>(i / 8)] = (target[static_cast<std::size_t>(i / 8)] << 4) | nib;
  }

  // Tasks split on the first octet; results concatenate in address order.
  std::vector<std::vector<Address>> found(256);
  parallel_for(256, options.workers, [&](std::size_t o1, unsigned) {
    std::uint8_t msg[128];
    std::memcpy(msg, prefix.data(), prefix.size());
    std::array<std::uint32_t, 6> words;
    for (std::uint32_t mid = 0; mid < (1u << 16); ++mid) {
      const Address a{(static_cast<std::uint32_t>(o1) << 24) | (mid << 8) | static_cast<std::uint32_t>(fixed_last_octet)};
      const std::size_t n = render_dotted(a, reinterpret_cast<char*>(msg) + prefix.size());
      detail::digest_words(HashAlgorithm::sha1, std::span<const std::uint8_t>(msg, prefix.size() + n), words);
      if (std::equal(target.begin(), target.end(), words.begin())) found[o1].push_back(a);
    }
  });
  std::vector<Address> out;
  for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double CandidateStats::variance() const noexcept {
  if (sets < 2) return 0.0;
  const double n = static_cast<double>(sets);
  const double m = mean();
  return std::max(0.0, (sum_squares - n * m * m) / (n - 1.0));
}

double CandidateStats::standard_error() const noexcept {
  return sets ? std::sqrt(variance() / static_cast<double>(sets)) : 0.0;
}

CandidateStats candidate_stats(std::span<const CandidateSet> sets) {
  if (sets.empty()) throw UsageError("candidate_stats needs at least one set");
  CandidateStats st;
  st.min = UINT64_MAX;
  for (const auto& s : sets) {
    const std::uint64_t n = s.addresses.size();
    st.min = std::min(st.min, n);
    st.max = std::max(st.max, n);
    st.total += n;
    st.sum_squares += static_cast<double>(n) * static_cast<double>(n);
    ++st.sets;
  }
  return st;
}

std::vector<std::uint64_t> username_histogram(TopicId topic, const SchemeConfig& config,
                                              const ScanOptions& options) {
  config.validate();
  const std::size_t cells = std::size_t{1} << config.username_bits();
  const std::string prefix = topic_prefix(topic, config);
  const std::uint64_t blocks = BlockHasher(config, prefix).block_count();
  const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_blocks);
  const std::size_t chunks = static_cast<std::size_t>((blocks + chunk - 1) / chunk);
  const unsigned workers = resolve_workers(options.workers);
  std::vector<std::vector<std::uint64_t>> local(workers);
  std::vector<std::unique_ptr<BlockHasher>> hashers(workers);
  std::vector<std::unique_ptr<detail::DigestBlock>> scratch(workers);
  const SliceReader reader(config.slice_start, config.username_len);

  parallel_for(chunks, workers, [&](std::size_t c, unsigned w) {
    if (!hashers[w]) {
      hashers[w] = std::make_unique<BlockHasher>(config, prefix);
      scratch[w] = std::make_unique<detail::DigestBlock>();
      local[w].assign(cells, 0);
    }
    alignas(64) std::uint32_t values[256];
    std::uint32_t base = 0;
    const std::uint64_t last = std::min(blocks, (c + 1) * chunk);
    for (std::uint64_t b = c * chunk; b < last; ++b) {
      const std::size_t count = hashers[w]->hash(b, *scratch[w], base);
      reader.read(*scratch[w], count, values);
      for (std::size_t i = 0; i < count; ++i) ++local[w][values[i]];
    }
  });
  std::vector<std::uint64_t> hist(cells, 0);
  for (const auto& l : local)
    for (std::size_t i = 0; i < l.size(); ++i) hist[i] += l[i];
  return hist;
}

std::vector<std::uint64_t> topic_sweep_histogram(Address address, TopicId first, std::uint64_t count,
                                                 const SchemeConfig& config) {
  config.validate();
  std::vector<std::uint64_t> hist(std::size_t{1} << config.username_bits(), 0);
  const std::string suffix = config.salt + render_dotted(address);
  std::array<std::uint32_t, 6> words;
  const SliceReader reader(config.slice_start, config.username_len);
  std::string msg;
  for (std::uint64_t t = first.value; t < first.value + count; ++t) {
    msg = std::to_string(t);
    msg += suffix;
    detail::digest_words(config.hash,
                         std::span(reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()), words);
    const std::uint64_t x = (std::uint64_t{words[static_cast<std::size_t>(reader.word)]} << 32) |
                            words[static_cast<std::size_t>(reader.word + 1)];
    ++hist[static_cast<std::size_t>((x << reader.shift) >> (64 - reader.bits))];
  }
  return hist;
}

const char* kernel_isa() { return detail::best_kernels().isa; }

}  // namespace pseudaudit::enumerate
