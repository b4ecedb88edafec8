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

#include "pseudaudit/attribute.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "pseudaudit/csv.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/parallel.hpp"
#include "pseudaudit/random.hpp"

namespace pseudaudit::attribute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::uint32_t>& require_set(const enumerate::CandidateStore& store, TopicId topic, int slice,
                                              Username username) {
  const auto* set = store.find(topic, slice, username);
  if (set) return *set;
  if (!store.has_topic(topic, slice))
    throw DataError("no candidate file for topic " + to_string(topic) + " at slice " + std::to_string(slice));
  throw DataError("candidate file for topic " + to_string(topic) + " at slice " + std::to_string(slice) +
                  " lacks username " + username.text());
}

}  // namespace

int half_width(WindowKind kind) noexcept {
  switch (kind) {
    case WindowKind::d7:
      return 3;
    case WindowKind::d31:
      return 15;
    case WindowKind::d91:
      return 45;
  }
  return 0;
}

int days(WindowKind kind) noexcept { return static_cast<int>(kind); }

WindowKind parse_window_kind(std::string_view text) {
  if (text == "7") return WindowKind::d7;
  if (text == "31") return WindowKind::d31;
  if (text == "91") return WindowKind::d91;
  throw ConfigError("window must be 7, 31 or 91, got '" + std::string(text) + "'");
}

std::string Window::id() const { return std::to_string(days(kind)) + ":" + scheme::format_date(target); }

// ---------------------------------------------------------------------------

CountTable::CountTable(const scheme::SchemeConfig& space) : dense_(space.address_space_bits <= 24) {
  if (dense_) {
    mask_ = static_cast<std::uint32_t>(space.address_count() - 1);
    counts_.assign(space.address_count(), 0);
  }
}

void CountTable::add_topic(std::span<const std::vector<std::uint32_t>* const> sets) {
  auto bump = [this](std::uint32_t a) {
    std::uint32_t* slot;
    if (dense_) {
      slot = &counts_[a & mask_];
    } else {
      slot = &sparse_[a];
    }
    if (*slot == 0) touched_.push_back(a);
    max_ = std::max(max_, ++*slot);
  };
  if (sets.size() == 1) {
    for (std::uint32_t a : *sets[0]) bump(a);
    return;
  }
  merge_.clear();
  for (const auto* s : sets) merge_.insert(merge_.end(), s->begin(), s->end());
  std::sort(merge_.begin(), merge_.end());
  merge_.erase(std::unique(merge_.begin(), merge_.end()), merge_.end());
  for (std::uint32_t a : merge_) bump(a);
}

std::uint32_t CountTable::count(std::uint32_t address) const noexcept {
  if (dense_) return counts_[address & mask_];
  auto it = sparse_.find(address);
  return it == sparse_.end() ? 0 : it->second;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> CountTable::entries() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(touched_.size());
  for (std::uint32_t a : touched_) out.emplace_back(a, count(a));
  std::sort(out.begin(), out.end());
  return out;
}

void CountTable::clear() {
  if (dense_) {
    for (std::uint32_t a : touched_) counts_[a & mask_] = 0;
  } else {
    sparse_.clear();
  }
  touched_.clear();
  max_ = 0;
}

// ---------------------------------------------------------------------------

double Thresholds::log_for(WindowKind kind) const noexcept {
  switch (kind) {
    case WindowKind::d7:
      return log_p7;
    case WindowKind::d31:
      return log_p31;
    case WindowKind::d91:
      return log_p91;
  }
  return -kInf;
}

double& Thresholds::log_for(WindowKind kind) noexcept {
  switch (kind) {
    case WindowKind::d31:
      return log_p31;
    case WindowKind::d91:
      return log_p91;
    default:
      return log_p7;
  }
}

void Thresholds::validate() const {
  for (WindowKind k : kAllWindows) {
    const double v = log_for(k);
    if (!std::isfinite(v) || !(v < std::log(kMaxThreshold)))
      throw CalibrationError("threshold for the " + std::to_string(days(k)) +
                             "-day window must be positive and below 1e-6");
  }
}

// ---------------------------------------------------------------------------

Corpus::Corpus(const Dump& dump, const scheme::SliceRegime& regimes) {
  posts_.reserve(dump.size());
  for (const Post& p : dump) {
    const scheme::Date date = scheme::date_of(p.timestamp);
    scheme::SliceChoice slices;
    try {
      slices = regimes.slices_for(date);
    } catch (const RangeError&) {
      throw DataError("post " + std::to_string(p.post_id) + " dated " + scheme::format_date(date) +
                      " is outside the regime table");
    }
    posts_.push_back({p.post_id, p.topic, p.username, scheme::day_number(date), slices});
  }
  std::sort(posts_.begin(), posts_.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.day, a.post_id) < std::tie(b.day, b.post_id);
  });
  for (const Entry& e : posts_)
    if (days_.empty() || days_.back() != e.day) days_.push_back(e.day);
}

std::pair<std::size_t, std::size_t> Corpus::range(std::int64_t first, std::int64_t last) const {
  auto lo = std::lower_bound(posts_.begin(), posts_.end(), first,
                             [](const Entry& e, std::int64_t d) { return e.day < d; });
  auto hi = std::upper_bound(posts_.begin(), posts_.end(), last,
                             [](std::int64_t d, const Entry& e) { return d < e.day; });
  return {static_cast<std::size_t>(lo - posts_.begin()), static_cast<std::size_t>(hi - posts_.begin())};
}

Corpus Corpus::with_constant_slice(int slice_start) const {
  Corpus c;
  c.posts_ = posts_;
  c.days_ = days_;
  for (Entry& e : c.posts_) {
    e.slices = scheme::SliceChoice{};
    e.slices.values[0] = slice_start;
    e.slices.count = 1;
  }
  return c;
}

// ---------------------------------------------------------------------------

WindowCounts count_window(const EvaluationContext& ctx, const Window& window, CountTable& table) {
  table.clear();
  const auto [lo, hi] = ctx.corpus->range(scheme::day_number(window.first()), scheme::day_number(window.last()));
  const auto& posts = ctx.corpus->posts();

  // Distinct (topic, slice, username) in the span, grouped by topic.
  std::vector<std::tuple<std::uint64_t, int, std::uint32_t>> keys;
  keys.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i)
    for (int s : posts[i].slices) keys.emplace_back(posts[i].topic.value, s, posts[i].username.value());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  WindowCounts out;
  out.load.username_bits = ctx.space.username_bits();
  const std::uint64_t space = std::uint64_t{1} << out.load.username_bits;
  std::vector<const std::vector<std::uint32_t>*> sets;
  for (std::size_t i = 0; i < keys.size();) {
    const std::uint64_t topic = std::get<0>(keys[i]);
    sets.clear();
    for (; i < keys.size() && std::get<0>(keys[i]) == topic; ++i) {
      const auto& [t, s, u] = keys[i];
      sets.push_back(&require_set(*ctx.store, TopicId{t}, s, Username(u, ctx.space.username_len)));
    }
    table.add_topic(sets);
    // Union bound when one topic is observed at two slices.
    out.load.k.push_back(std::min<std::uint64_t>(sets.size(), space));
  }
  out.max_count = table.max_count();
  return out;
}

std::vector<PostScore> score_day(const EvaluationContext& ctx, const Window& window, const CountTable& table,
                                 const pbnull::NullTable& null, const std::vector<char>* eligible) {
  const std::int64_t day = scheme::day_number(window.target);
  const auto [lo, hi] = ctx.corpus->range(day, day);
  const auto& posts = ctx.corpus->posts();
  std::vector<PostScore> out;
  for (std::size_t i = lo; i < hi; ++i) {
    if (eligible && !(*eligible)[i]) continue;
    const auto& post = posts[i];
    PostScore best{post.post_id, false, Address{}, kInf, 0};
    for (int s : post.slices) {
      for (std::uint32_t a : require_set(*ctx.store, post.topic, s, post.username)) {
        const double lp = null.log_survival(table.count(a));
        if (!best.scored || std::tie(lp, a, s) < std::tie(best.log_p, best.address.value, best.slice_start)) {
          best.scored = true;
          best.log_p = lp;
          best.address = Address{a};
          best.slice_start = s;
        }
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<AssignmentRecord> assign_day(const EvaluationContext& ctx, const Window& window, const CountTable& table,
                                         const pbnull::NullTable& null, double log_threshold,
                                         const std::vector<char>* eligible) {
  std::vector<AssignmentRecord> out;
  for (const PostScore& s : score_day(ctx, window, table, null, eligible))
    if (s.scored && s.log_p < log_threshold)
      out.push_back({s.post_id, s.address, s.log_p, window.kind, s.slice_start});
  return out;
}

std::vector<PostScore> evaluate_pass(const EvaluationContext& ctx, WindowKind kind, const std::vector<char>* eligible,
                                     const RunOptions& options) {
  const auto& posts = ctx.corpus->posts();
  std::vector<PostScore> result(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) result[i].post_id = posts[i].post_id;

  std::vector<std::int64_t> targets;
  for (std::int64_t d : ctx.corpus->days()) {
    const auto [lo, hi] = ctx.corpus->range(d, d);
    bool any = !eligible;
    for (std::size_t i = lo; i < hi && !any; ++i) any = (*eligible)[i] != 0;
    if (any) targets.push_back(d);
  }
  if (options.shuffle_days) {
    SplitMix64 rng(options.shuffle_days);
    for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[rng.below(i)]);
  }

  const unsigned workers = resolve_workers(options.workers);
  std::vector<std::unique_ptr<CountTable>> tables(workers);
  parallel_for(targets.size(), workers, [&](std::size_t task, unsigned w) {
    if (!tables[w]) tables[w] = std::make_unique<CountTable>(ctx.space);
    const Window window{kind, scheme::Date{std::chrono::days{targets[task]}}};
    const WindowCounts counts = count_window(ctx, window, *tables[w]);
    pbnull::NullTable null = pbnull::window_pmf(counts.load, pbnull::default_c_max(counts.max_count));
    const auto [lo, hi] = ctx.corpus->range(targets[task], targets[task]);
    std::size_t j = lo;
    for (const PostScore& s : score_day(ctx, window, *tables[w], null, eligible)) {
      while (posts[j].post_id != s.post_id) ++j;
      result[j] = s;
    }
    (void)hi;
  });
  return result;
}

Calibration calibrate(const EvaluationContext& noise_ctx, int noise_slice, const RunOptions& options) {
  return calibrate(std::span<const EvaluationContext>(&noise_ctx, 1), std::span<const int>(&noise_slice, 1), options);
}

Calibration calibrate(std::span<const EvaluationContext> noise_ctxs, std::span<const int> noise_slices,
                      const RunOptions& options) {
  if (noise_ctxs.size() != noise_slices.size() || noise_ctxs.empty())
    throw UsageError("calibrate needs one noise context per noise slice");
  Calibration cal;
  cal.noise_slices.assign(noise_slices.begin(), noise_slices.end());
  for (WindowKind kind : kAllWindows) {
    WindowCalibration w;
    w.kind = kind;
    w.min_log_p = kInf;
    for (std::size_t c = 0; c < noise_ctxs.size(); ++c) {
      for (const PostScore& s : evaluate_pass(noise_ctxs[c], kind, nullptr, options)) {
        if (!s.scored) continue;
        ++w.posts_scored;
        if (s.log_p < w.min_log_p || (s.log_p == w.min_log_p && s.post_id < w.argmin_post)) {
          w.min_log_p = s.log_p;
          w.argmin_post = s.post_id;
          w.argmin_slice = noise_slices[c];
        }
      }
    }
    if (w.posts_scored == 0) throw CalibrationError("noise run scored no posts; cannot calibrate");
    if (!std::isfinite(w.min_log_p))
      throw CalibrationError("noise run produced a zero p-value in the " + std::to_string(days(kind)) +
                             "-day window");
    const double cap = std::log(kMaxThreshold);
    if (w.min_log_p >= cap) {
      w.threshold_log_p = std::nextafter(cap, -kInf);
      w.clamped = true;
    } else {
      w.threshold_log_p = std::nextafter(w.min_log_p, -kInf);
    }
    cal.thresholds.log_for(kind) = w.threshold_log_p;
    cal.windows.push_back(w);
  }
  return cal;
}

std::vector<int> unused_positions(const scheme::SchemeConfig& scheme, const scheme::SliceRegime& regimes) {
  const std::vector<int> used = regimes.slices_in_use();
  std::vector<int> out;
  for (int p = 0; p + scheme.username_len <= digest_hex_length(scheme.hash); ++p)
    if (!std::binary_search(used.begin(), used.end(), p)) out.push_back(p);
  return out;
}

std::vector<AssignmentRecord> run_pipeline(const EvaluationContext& ctx, const Thresholds& thresholds,
                                           const RunOptions& options) {
  const auto& posts = ctx.corpus->posts();
  std::vector<char> eligible(posts.size(), 1);
  std::vector<AssignmentRecord> out;
  for (WindowKind kind : kAllWindows) {
    const double thr = thresholds.log_for(kind);
    const auto scores = evaluate_pass(ctx, kind, &eligible, options);
    for (std::size_t i = 0; i < posts.size(); ++i) {
      const PostScore& s = scores[i];
      if (!eligible[i] || !s.scored || !(s.log_p < thr)) continue;
      out.push_back({s.post_id, s.address, s.log_p, kind, s.slice_start});
      eligible[i] = 0;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AssignmentRecord& a, const AssignmentRecord& b) { return a.post_id < b.post_id; });
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> detect_crossing(std::span<const double> a, std::span<const double> b,
                                           int min_improvement, int* improvement) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<int> sign(n);
  for (std::size_t i = 0; i < n; ++i) sign[i] = a[i] < b[i] ? 1 : (a[i] > b[i] ? -1 : 0);
  const auto agree = [&](std::size_t from, std::size_t to, int s) {
    int c = 0;
    for (std::size_t i = from; i < to; ++i) c += sign[i] == s;
    return c;
  };
  const int constant = std::max(agree(0, n, 1), agree(0, n, -1));
  int best = constant;
  std::optional<std::size_t> split;
  for (std::size_t k = 1; k < n; ++k) {
    for (int s : {1, -1}) {
      const int score = agree(0, k, s) + agree(k, n, -s);
      if (score > best) {
        best = score;
        split = k;
      }
    }
  }
  if (improvement) *improvement = best - constant;
  if (!split || best - constant < min_improvement) return std::nullopt;
  return split;
}

PositionScan scan_positions(const Dump& dump, const enumerate::CandidateStore& store,
                            const scheme::SchemeConfig& space, std::span<const int> positions,
                            const RunOptions& options) {
  PositionScan scan;
  scan.positions.assign(positions.begin(), positions.end());
  if (dump.empty() || positions.empty()) return scan;

  // Dates only matter through the window; any single regime covering the
  // dump works as a scaffold.
  std::int64_t first = std::numeric_limits<std::int64_t>::max(), last = std::numeric_limits<std::int64_t>::min();
  for (const Post& p : dump) {
    first = std::min(first, scheme::day_number(scheme::date_of(p.timestamp)));
    last = std::max(last, scheme::day_number(scheme::date_of(p.timestamp)));
  }
  const scheme::Date first_date{std::chrono::days{first}};
  const Corpus base(dump, scheme::SliceRegime::constant(first_date, scheme::Date{std::chrono::days{last}}, 0));
  const std::int64_t weeks = (last - first) / 7 + 1;

  std::vector<std::vector<double>> means(positions.size(), std::vector<double>(static_cast<std::size_t>(weeks)));
  std::vector<std::vector<std::size_t>> counts(positions.size(),
                                               std::vector<std::size_t>(static_cast<std::size_t>(weeks)));
  for (std::size_t pi = 0; pi < positions.size(); ++pi) {
    const Corpus corpus = base.with_constant_slice(positions[pi]);
    const EvaluationContext ctx{&corpus, &store, space};
    const auto scores = evaluate_pass(ctx, WindowKind::d7, nullptr, options);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (!scores[i].scored) continue;
      const auto w = static_cast<std::size_t>((corpus.posts()[i].day - first) / 7);
      means[pi][w] += std::exp(scores[i].log_p);
      ++counts[pi][w];
    }
    for (std::size_t w = 0; w < means[pi].size(); ++w)
      if (counts[pi][w]) means[pi][w] /= static_cast<double>(counts[pi][w]);
  }
  for (std::int64_t w = 0; w < weeks; ++w)
    for (std::size_t pi = 0; pi < positions.size(); ++pi)
      scan.series.push_back({w, first_date + std::chrono::days{7 * w}, positions[pi],
                             counts[pi][static_cast<std::size_t>(w)], means[pi][static_cast<std::size_t>(w)]});
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      Crossing c{positions[i], positions[j], std::nullopt, 0};
      if (auto k = detect_crossing(means[i], means[j], 2, &c.improvement)) c.week = static_cast<std::int64_t>(*k);
      scan.crossings.push_back(c);
    }
  }
  return scan;
}

// ---------------------------------------------------------------------------

void write_assignments(const std::filesystem::path& path, std::span<const AssignmentRecord> records,
                       std::string_view header) {
  std::ostringstream out;
  out << header << "post_id,address,log10_p,window,slice_start\n";
  char buf[64];
  for (const AssignmentRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g", r.log_p / std::log(10.0));
    out << r.post_id << ',' << render_dotted(r.address) << ',' << buf << ',' << days(r.window) << ','
        << r.slice_start << '\n';
  }
  write_file_atomic(path, out.str());
}

std::vector<AssignmentRecord> read_assignments(const std::filesystem::path& path) {
  std::vector<AssignmentRecord> out;
  for (const auto& rec : csv::read_file(path, {"post_id", "address", "log10_p", "window", "slice_start"})) {
    AssignmentRecord r;
    const auto& f = rec.fields;
    auto [p1, e1] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), r.post_id);
    if (e1 != std::errc{} || p1 != f[0].data() + f[0].size()) throw ParseError("bad post_id", rec.line);
    auto a = parse_dotted(f[1]);
    if (!a) throw ParseError("bad address '" + f[1] + "'", rec.line);
    r.address = *a;
    try {
      r.log_p = std::stod(f[2]) * std::log(10.0);
      r.window = parse_window_kind(f[3]);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), rec.line);
    }
    auto [p2, e2] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), r.slice_start);
    if (e2 != std::errc{} || p2 != f[4].data() + f[4].size()) throw ParseError("bad slice_start", rec.line);
    out.push_back(r);
  }
  return out;
}

std::string calibration_json(const Calibration& calibration) {
  nlohmann::ordered_json j;
  j["noise_slices"] = calibration.noise_slices;
  const double ln10 = std::log(10.0);
  auto& arr = j["windows"] = nlohmann::ordered_json::array();
  for (const WindowCalibration& w : calibration.windows) {
    nlohmann::ordered_json o;
    o["window"] = days(w.kind);
    o["posts_scored"] = w.posts_scored;
    o["min_noise_ln_p"] = w.min_log_p;
    o["min_noise_log10_p"] = w.min_log_p / ln10;
    o["argmin_post"] = w.argmin_post;
    o["argmin_slice"] = w.argmin_slice;
    o["threshold_ln_p"] = w.threshold_log_p;
    o["threshold_log10_p"] = w.threshold_log_p / ln10;
    o["threshold_p"] = std::exp(w.threshold_log_p);
    o["clamped"] = w.clamped;
    arr.push_back(o);
  }
  return j.dump(2) + "\n";
}

Thresholds read_thresholds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("missing thresholds: cannot open " + path.string() + " (run calibrate first)");
  Thresholds t;
  bool seen[3] = {false, false, false};
  try {
    const auto j = nlohmann::json::parse(in, nullptr, true, true);
    for (const auto& w : j.at("windows")) {
      const WindowKind kind = parse_window_kind(std::to_string(w.at("window").get<int>()));
      t.log_for(kind) = w.at("threshold_ln_p").get<double>();
      seen[kind == WindowKind::d7 ? 0 : kind == WindowKind::d31 ? 1 : 2] = true;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed thresholds file " + path.string() + ": " + e.what());
  }
  if (!(seen[0] && seen[1] && seen[2])) throw ConfigError("thresholds file " + path.string() + " lacks a window");
  return t;
}

}  // namespace pseudaudit::attribute
