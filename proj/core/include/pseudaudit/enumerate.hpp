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
#include <span>
#include <string_view>
#include <vector>

#include "pseudaudit/address.hpp"
#include "pseudaudit/scheme.hpp"

namespace pseudaudit::enumerate {

/// Every address in the configured space whose username for `topic` at
/// `slice_start` equals `username`, sorted ascending.
struct CandidateSet {
  TopicId topic;
  Username username;
  int slice_start = 0;
  std::vector<std::uint32_t> addresses;
};

/// One topic's scan request: the distinct usernames observed in it and the
/// slice starts to match them at.
struct TopicWorkOrder {
  TopicId topic;
  std::vector<Username> usernames;
  std::vector<int> slice_starts;

  /// Sorts and deduplicates both lists.
  void normalize();
};

struct ScanOptions {
  unsigned workers = 1;
  /// 256-address blocks per parallel task.
  std::uint64_t chunk_blocks = 4096;
};

/// Brute-forces the configured address space once for `order.topic` and
/// returns one set per (slice_start, username), slice-major, usernames
/// ascending. `config.slice_start` is ignored. Output does not depend on the
/// worker count or chunking.
std::vector<CandidateSet> candidates_for_topic(const TopicWorkOrder& order,
                                               const scheme::SchemeConfig& config,
                                               const ScanOptions& options = {});

/// Addresses present in every set. Throws UsageError on an empty list.
std::vector<std::uint32_t> intersect(std::span<const CandidateSet> sets);
std::vector<std::uint32_t> intersect(std::span<const std::vector<std::uint32_t>> sets);

/// All addresses a.b.c.<last_octet> whose SHA-1 of prefix ++ dotted equals
/// `digest_hex` (40 lowercase hex characters).
std::vector<Address> find_suffix_preimages(std::string_view prefix, std::string_view digest_hex,
                                           int fixed_last_octet, const ScanOptions& options = {});

struct CandidateStats {
  std::size_t sets = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  /// Exact total; mean() == total / sets.
  std::uint64_t total = 0;
  double sum_squares = 0.0;

  double mean() const noexcept { return sets ? static_cast<double>(total) / static_cast<double>(sets) : 0.0; }
  /// Unbiased sample variance of set sizes.
  double variance() const noexcept;
  /// Standard error of mean().
  double standard_error() const noexcept;
};

/// Throws UsageError on an empty input.
CandidateStats candidate_stats(std::span<const CandidateSet> sets);

/// Username counts for every address in the configured space at
/// config.slice_start; size 2^username_bits.
std::vector<std::uint64_t> username_histogram(TopicId topic, const scheme::SchemeConfig& config,
                                              const ScanOptions& options = {});

/// Username counts for one address over topics [first, first + count).
std::vector<std::uint64_t> topic_sweep_histogram(Address address, TopicId first, std::uint64_t count,
                                                 const scheme::SchemeConfig& config);

/// Name of the batch kernel set in use ("avx512", "avx2" or "generic").
const char* kernel_isa();

}  // namespace pseudaudit::enumerate
