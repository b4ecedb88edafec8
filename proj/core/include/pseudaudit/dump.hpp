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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pseudaudit/address.hpp"

namespace pseudaudit {

/// One row of a public forum dump. Carries no address information.
struct Post {
  std::uint64_t post_id = 0;
  TopicId topic;
  Username username;
  std::int64_t timestamp = 0;  // Unix seconds, UTC

  bool operator==(const Post&) const = default;
};

using Dump = std::vector<Post>;

/// Hidden post_id -> address map, sorted by post_id.
class GroundTruth {
 public:
  GroundTruth() = default;
  /// Sorts; throws DataError on a duplicate post_id.
  explicit GroundTruth(std::vector<std::pair<std::uint64_t, Address>> rows);

  std::optional<Address> find(std::uint64_t post_id) const;
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const std::vector<std::pair<std::uint64_t, Address>>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::pair<std::uint64_t, Address>> rows_;
};

/// Prefixes every line of `text` with "# ". Empty input gives "".
std::string comment_block(std::string_view text);

/// CSV `post_id,topic_id,username,timestamp`, preceded by `header` (already
/// comment-formatted, possibly empty).
void write_dump(const std::filesystem::path& path, const Dump& dump, std::string_view header = {});
/// Throws ParseError (with line) on malformed rows and DataError when
/// post_ids are not strictly increasing or usernames differ in length from
/// `username_len`.
Dump read_dump(const std::filesystem::path& path, int username_len);

/// CSV `post_id,address` with dotted-decimal addresses.
void write_truth(const std::filesystem::path& path, const GroundTruth& truth, std::string_view header = {});
GroundTruth read_truth(const std::filesystem::path& path);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace pseudaudit
