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
#include <filesystem>
#include <span>
#include <unordered_map>
#include <vector>

#include "pseudaudit/dump.hpp"
#include "pseudaudit/enumerate.hpp"

namespace pseudaudit::enumerate {

// Per-(topic, slice) binary file, all integers little-endian:
//
//   "PFC1" | topic u64 | slice_start u8 | username count u32
//   then per username: L ASCII hex chars | address count u32 | addresses u32[]
//
// L is the configured username length; it is not stored in the file.

void write_topic_file(const std::filesystem::path& path, TopicId topic, int slice_start,
                      std::span<const CandidateSet> sets, int username_len);

/// Throws DataError on a truncated or malformed file.
std::vector<CandidateSet> read_topic_file(const std::filesystem::path& path, int username_len);

/// In-memory candidate sets keyed by (topic, slice_start, username), backed
/// by a directory of topic files plus an `index.jsonl`.
class CandidateStore {
 public:
  explicit CandidateStore(int username_len = 4) : username_len_(username_len) {}

  /// Sets must share one (topic, slice_start); replaces any previous entry.
  void add_topic(TopicId topic, int slice_start, std::vector<CandidateSet> sets);

  bool has_topic(TopicId topic, int slice_start) const;
  /// Null when the topic is stored but the username was never observed, or
  /// when the topic is absent.
  const std::vector<std::uint32_t>* find(TopicId topic, int slice_start, Username username) const;

  /// Writes one file per (topic, slice) and index.jsonl, in key order.
  void save(const std::filesystem::path& dir) const;
  /// Reads index.jsonl and every file it lists. Throws DataError.
  static CandidateStore load(const std::filesystem::path& dir, int username_len);

  int username_len() const noexcept { return username_len_; }
  std::size_t topic_count() const noexcept { return entries_.size(); }
  /// All sets, ordered by (topic, slice, username).
  std::vector<const CandidateSet*> all_sets() const;

  static std::string file_name(TopicId topic, int slice_start);

 private:
  struct Entry {
    TopicId topic;
    int slice_start = 0;
    std::vector<CandidateSet> sets;  // sorted by username
  };
  static std::uint64_t key(TopicId topic, int slice_start) noexcept {
    return (topic.value << 8) | static_cast<std::uint64_t>(slice_start & 0xff);
  }

  int username_len_;
  std::unordered_map<std::uint64_t, Entry> entries_;
};

/// One order per topic in the dump, covering every username seen in it at
/// every listed slice. Ordered by topic id.
std::vector<TopicWorkOrder> work_orders(const Dump& dump, std::span<const int> slice_starts);

/// Scans every topic of the dump once and stores its sets at each slice.
CandidateStore build_store(const Dump& dump, const scheme::SchemeConfig& config, std::span<const int> slice_starts,
                           const ScanOptions& options = {});

}  // namespace pseudaudit::enumerate
