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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pseudaudit::chrono {

/// Posts with known exact timestamps (Unix seconds), keyed by post id.
class AnchorSet {
 public:
  AnchorSet() = default;
  /// Throws DataError unless both post ids and timestamps strictly increase.
  explicit AnchorSet(std::vector<std::pair<std::uint64_t, std::int64_t>> anchors);

  /// Sorts by post id and drops any anchor whose timestamp does not exceed
  /// the previous kept one (same-second posts, clock skew).
  static AnchorSet thinned(std::vector<std::pair<std::uint64_t, std::int64_t>> anchors);

  const std::vector<std::pair<std::uint64_t, std::int64_t>>& anchors() const noexcept { return anchors_; }
  std::size_t size() const noexcept { return anchors_.size(); }
  bool empty() const noexcept { return anchors_.empty(); }
  bool contains(std::uint64_t post_id) const;

 private:
  std::vector<std::pair<std::uint64_t, std::int64_t>> anchors_;
};

/// Linear in post id between the bracketing anchors, extrapolated from the
/// two nearest anchors outside them. A single anchor gives its own time.
/// Throws UsageError on an empty set.
double interpolate(const AnchorSet& anchors, std::uint64_t post_id);

struct GapStats {
  /// Unanchored posts strictly between the first and last anchor.
  std::size_t bracketed = 0;
  /// Unanchored posts outside the anchor range; not in the statistics.
  std::size_t outside = 0;
  /// Time between the two anchors bracketing each bracketed post, seconds.
  double mean = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
};

/// Nearest-rank percentiles; all zero when nothing is bracketed.
GapStats gap_stats(const AnchorSet& anchors, std::span<const std::uint64_t> post_ids);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(std::int64_t unix_seconds);
/// Accepts a trailing "Z", "+00:00" or nothing; other offsets are applied.
/// Throws ParseError.
std::int64_t parse_iso8601(std::string_view text);

/// CSV `post_id,timestamp_iso8601`. Reading uses the strict constructor.
void write_anchors(const std::filesystem::path& path, const AnchorSet& anchors, std::string_view header = {});
AnchorSet read_anchors(const std::filesystem::path& path);

}  // namespace pseudaudit::chrono
