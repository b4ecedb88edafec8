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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pseudaudit/candidate_store.hpp"
#include "pseudaudit/dump.hpp"
#include "pseudaudit/pbnull.hpp"
#include "pseudaudit/scheme.hpp"

namespace pseudaudit::attribute {

enum class WindowKind { d7 = 7, d31 = 31, d91 = 91 };

inline constexpr WindowKind kAllWindows[] = {WindowKind::d7, WindowKind::d31, WindowKind::d91};

/// 3, 15 or 45 days on each side of the target day.
int half_width(WindowKind kind) noexcept;
int days(WindowKind kind) noexcept;
/// Accepts "7", "31", "91". Throws ConfigError.
WindowKind parse_window_kind(std::string_view text);

struct Window {
  WindowKind kind = WindowKind::d7;
  scheme::Date target;

  scheme::Date first() const noexcept { return target - std::chrono::days{half_width(kind)}; }
  scheme::Date last() const noexcept { return target + std::chrono::days{half_width(kind)}; }
  /// "<days>:<YYYY-MM-DD>".
  std::string id() const;
};

/// Per-address occurrence counts over a window's candidate sets. Each
/// address is counted at most once per topic. Dense for address spaces of at
/// most 2^24, a hash map otherwise.
class CountTable {
 public:
  explicit CountTable(const scheme::SchemeConfig& space);

  /// Adds one topic given all of its candidate sets in the window.
  void add_topic(std::span<const std::vector<std::uint32_t>* const> sets);
  std::uint32_t count(std::uint32_t address) const noexcept;
  std::uint32_t max_count() const noexcept { return max_; }
  std::size_t distinct() const noexcept { return touched_.size(); }
  /// (address, count) sorted by address.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries() const;
  void clear();

 private:
  bool dense_;
  std::uint32_t mask_ = 0;
  std::vector<std::uint32_t> counts_;
  std::unordered_map<std::uint32_t, std::uint32_t> sparse_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> merge_;
  std::uint32_t max_ = 0;
};

/// Per-window assignment thresholds as natural-log p-values.
struct Thresholds {
  double log_p7 = 0.0;
  double log_p31 = 0.0;
  double log_p91 = 0.0;

  double log_for(WindowKind kind) const noexcept;
  double& log_for(WindowKind kind) noexcept;
  /// Throws CalibrationError unless each threshold is in (0, 1e-6).
  void validate() const;
};

struct AssignmentRecord {
  std::uint64_t post_id = 0;
  Address address;
  double log_p = 0.0;  // natural log
  WindowKind window = WindowKind::d7;
  int slice_start = 0;

  bool operator==(const AssignmentRecord&) const = default;
};

/// The best candidate of one post in one window, before thresholding.
struct PostScore {
  std::uint64_t post_id = 0;
  bool scored = false;  // false when every candidate set is empty
  Address address;
  double log_p = 0.0;
  int slice_start = 0;
};

/// A dump prepared for windowed evaluation: posts grouped by day with their
/// admissible slice starts.
class Corpus {
 public:
  /// Slices per post come from `regimes` (two on a cutoff date). Throws
  /// DataError when a post falls outside the regime table.
  Corpus(const Dump& dump, const scheme::SliceRegime& regimes);

  struct Entry {
    std::uint64_t post_id;
    TopicId topic;
    Username username;
    std::int64_t day;  // days since epoch
    scheme::SliceChoice slices;
  };

  const std::vector<Entry>& posts() const noexcept { return posts_; }
  /// Sorted distinct days with at least one post.
  const std::vector<std::int64_t>& days() const noexcept { return days_; }
  /// Posts with day in [first, last], as an index range into posts().
  std::pair<std::size_t, std::size_t> range(std::int64_t first, std::int64_t last) const;
  /// The same posts with every slice replaced by `slice_start`.
  Corpus with_constant_slice(int slice_start) const;

 private:
  Corpus() = default;
  std::vector<Entry> posts_;  // sorted by (day, post_id)
  std::vector<std::int64_t> days_;
};

struct EvaluationContext {
  const Corpus* corpus = nullptr;
  const enumerate::CandidateStore* store = nullptr;
  scheme::SchemeConfig space;  // username_len and address space
};

/// Counts and TopicLoad of one window. Throws DataError when a candidate set
/// needed by a post in the span is missing from the store.
struct WindowCounts {
  pbnull::TopicLoad load;
  std::uint32_t max_count = 0;
};
WindowCounts count_window(const EvaluationContext& ctx, const Window& window, CountTable& table);

/// Scores every eligible post on the target day against a filled table:
/// per post, the candidate with the smallest log-survival (ties: smaller
/// address, then smaller slice).
std::vector<PostScore> score_day(const EvaluationContext& ctx, const Window& window, const CountTable& table,
                                 const pbnull::NullTable& null, const std::vector<char>* eligible = nullptr);

/// score_day filtered by the strict threshold test log_p < log_threshold.
std::vector<AssignmentRecord> assign_day(const EvaluationContext& ctx, const Window& window, const CountTable& table,
                                         const pbnull::NullTable& null, double log_threshold,
                                         const std::vector<char>* eligible = nullptr);

struct RunOptions {
  unsigned workers = 1;
  /// Non-zero: process target days in a shuffled order (results must not
  /// change).
  std::uint64_t shuffle_days = 0;
};

/// Best score of every eligible post for one window kind; indexed like
/// corpus.posts(). `eligible` may be null (all posts).
std::vector<PostScore> evaluate_pass(const EvaluationContext& ctx, WindowKind kind, const std::vector<char>* eligible,
                                     const RunOptions& options = {});

struct WindowCalibration {
  WindowKind kind = WindowKind::d7;
  std::size_t posts_scored = 0;
  double min_log_p = 0.0;
  std::uint64_t argmin_post = 0;
  int argmin_slice = 0;
  double threshold_log_p = 0.0;
  bool clamped = false;
};

struct Calibration {
  std::vector<int> noise_slices;
  std::vector<WindowCalibration> windows;
  Thresholds thresholds;
};

/// Upper bound on calibrated thresholds; the noise minimum is clamped below
/// it when the noise run is too small to get there.
inline constexpr double kMaxThreshold = 1e-6;

/// Noise run: every post scored at `noise_slice` in every window kind, with
/// no threshold. Each threshold is the largest double strictly below that
/// window's minimum noise log-p. Throws CalibrationError on an empty run.
Calibration calibrate(const EvaluationContext& noise_ctx, int noise_slice, const RunOptions& options = {});

/// Same, pooled: one noise run per entry of `noise_slices` (each corpus
/// pinned to that slice), minimum taken across all of them.
Calibration calibrate(std::span<const EvaluationContext> noise_ctxs, std::span<const int> noise_slices,
                      const RunOptions& options = {});

/// Every digest position that no regime uses, in increasing order.
std::vector<int> unused_positions(const scheme::SchemeConfig& scheme, const scheme::SliceRegime& regimes);

/// 7-day pass, then 31-day and 91-day passes over posts still unassigned.
/// Records sorted by post_id.
std::vector<AssignmentRecord> run_pipeline(const EvaluationContext& ctx, const Thresholds& thresholds,
                                           const RunOptions& options = {});

struct WeeklyPoint {
  std::int64_t week = 0;  // weeks since the first post's day
  scheme::Date week_start;
  int position = 0;
  std::size_t posts = 0;
  double mean_min_p = 0.0;
};

struct Crossing {
  int position_a = 0;
  int position_b = 0;
  std::optional<std::int64_t> week;  // first week of the new ordering
  int improvement = 0;               // weeks explained beyond a constant ordering
};

struct PositionScan {
  std::vector<int> positions;
  std::vector<WeeklyPoint> series;  // week-major, positions in input order
  std::vector<Crossing> crossings;  // one per pair of positions
};

/// Splits a series of signs into two constant runs. Returns the first index
/// of the second run when the best split explains at least
/// `min_improvement` more entries than a single constant sign.
std::optional<std::size_t> detect_crossing(std::span<const double> a, std::span<const double> b,
                                           int min_improvement = 2, int* improvement = nullptr);

/// For each position, the weekly mean over posts of the minimal p-value in
/// the post's 7-day window, with the position used for every date.
PositionScan scan_positions(const Dump& dump, const enumerate::CandidateStore& store,
                            const scheme::SchemeConfig& space, std::span<const int> positions,
                            const RunOptions& options = {});

/// CSV `post_id,address,log10_p,window,slice_start`.
void write_assignments(const std::filesystem::path& path, std::span<const AssignmentRecord> records,
                       std::string_view header = {});
std::vector<AssignmentRecord> read_assignments(const std::filesystem::path& path);

std::string calibration_json(const Calibration& calibration);
/// Reads the thresholds back from calibration_json output. Throws
/// ConfigError when the file is missing or incomplete.
Thresholds read_thresholds(const std::filesystem::path& path);

}  // namespace pseudaudit::attribute
