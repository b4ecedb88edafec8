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

#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pseudaudit/errors.hpp"
#include "pseudaudit/hash.hpp"

#ifndef PSEUDAUDIT_VERSION
#define PSEUDAUDIT_VERSION "0.0.0"
#endif

namespace pseudaudit::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) next = s.size();
    const auto item = trim(s.substr(pos, next - pos));
    if (!item.empty()) out.push_back(item);
    pos = next + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const auto t = trim(text);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty())
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  return v;
}

}  // namespace

const std::vector<KeySpec>& RunConfig::keys() {
  static const std::vector<KeySpec> k = {
      {"run.seed", "20130708", "generator and shuffle seed"},
      {"run.workers", "1", "worker threads; 0 means all cores"},
      {"run.shuffle_days", "0", "nonzero: evaluate days in an order permuted by this value"},

      {"paths.dump", "work/dump.csv", "public dump CSV", true},
      {"paths.truth", "work/truth.csv", "hidden ground truth CSV", true},
      {"paths.regimes", "work/regimes.csv", "slice regime table", true},
      {"paths.anchors", "work/anchors.csv", "timestamp anchors CSV", true},
      {"paths.store", "work/store", "candidate store directory", true},
      {"paths.calibration", "work/calibration.json", "calibration report and thresholds", true},
      {"paths.assignments", "work/assignments.csv", "assignments CSV", true},
      {"paths.score", "work/score.json", "validation score report", true},
      {"paths.scan", "work/scan.csv", "weekly position-scan series", true},
      {"paths.crossings", "work/crossings.jsonl", "position-scan crossings", true},
      {"paths.report", "work/report.jsonl", "analytics report", true},
      {"paths.bogons", "", "bogon CIDR list; empty means the built-in table", true},
      {"paths.labels", "", "label table CSV cidr,label", true},
      {"paths.lexicon", "", "directory with english.txt, profanity.txt, leet.txt, canon.csv, skip.txt", true},
      {"paths.text_in", "", "normalize-text input CSV post_id,text", true},
      {"paths.text_out", "", "normalize-text output CSV", true},

      {"scheme.hash", "sha1", "hash the attributor assumes"},
      {"scheme.salt", "", "salt the attributor assumes"},
      {"scheme.username_len", "4", "username length in hex characters"},
      {"scheme.address_space_bits", "24", "enumerated address bits (32, or 1..24)"},
      {"scheme.high_octet", "172", "fixed first octet when address_space_bits < 32"},

      {"forum.hash", "sha1", "hash the simulated forum uses"},
      {"forum.salt", "", "salt the simulated forum uses"},
      {"forum.start", "2013-06-08", "first day"},
      {"forum.days", "60", "number of days"},
      {"forum.topics_per_day", "poisson(8.3333333333333339)", "topic draw law"},
      {"forum.posts_per_topic", "1+poisson(4)", "posts per topic draw law"},
      {"forum.reply_gap_minutes", "120", "mean gap between posts of a topic"},
      {"forum.hour_weights", "", "24 comma-separated topic intensities per UTC hour"},
      {"forum.slice_start", "9", "slice position in use at the end of the span"},
      {"forum.switch_day", "30", "day offset where the slice moved from slice_start - 1; -1 for none"},
      {"forum.first_topic_id", "1", "first topic id"},
      {"forum.first_post_id", "1", "first post id"},

      {"population.addresses", "300", "active addresses"},
      {"population.law", "stretched_exponential", "activity law: stretched_exponential or uniform"},
      {"population.a", "0", "log weight intercept"},
      {"population.b", "0.35", "log weight slope"},
      {"population.c", "0.5", "rank exponent"},
      {"population.churn_rate", "0", "daily replacement probability"},
      {"population.pool", "", "'cidr weight [label]' entries separated by ';'"},

      {"anchors.fraction", "0.05", "share of posts with exact timestamps"},

      {"enumerate.chunk_blocks", "4096", "256-address blocks per parallel task"},

      {"calibrate.noise_slices", "unused", "'unused', 'next' or a comma list of positions"},

      {"attribute.threshold_log10_p7", "", "override the 7-day threshold (log10 p)"},
      {"attribute.threshold_log10_p31", "", "override the 31-day threshold (log10 p)"},
      {"attribute.threshold_log10_p91", "", "override the 91-day threshold (log10 p)"},

      {"scan.positions", "8,9,10", "digest positions compared by scan-positions"},

      {"validate.min_precision", "", "fail when precision falls below this"},
      {"validate.uniformity_topic", "", "also test the username histogram of this topic"},
      {"validate.alpha", "0.01", "significance level of the uniformity test"},

      {"report.source", "assignments", "rank counts from 'assignments' or 'truth'"},
      {"report.fractions", "0.01,0.05,0.1,0.5", "concentration fractions"},
      {"report.fit_ranks", "0", "ranks used by the fit; 0 means all"},
      {"report.bucket_minutes", "60", "time profile bucket width"},
      {"report.utc_offset_minutes", "0", "time profile timezone offset"},
  };
  return k;
}

RunConfig::RunConfig() {
  for (const KeySpec& k : keys()) values_.emplace(k.key, k.default_value);
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  const std::filesystem::path base = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected 'section.key = value'");
    try {
      set(trim(s.substr(0, eq)), std::string(trim(s.substr(eq + 1))), base);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::set(std::string_view key, std::string value, const std::filesystem::path& base) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  bool is_path = false;
  for (const KeySpec& k : keys())
    if (key == k.key) is_path = k.is_path;
  if (is_path && !value.empty() && !base.empty() && std::filesystem::path(value).is_relative())
    value = (base / value).lexically_normal().string();
  it->second = std::move(value);
}

const std::string& RunConfig::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  return it->second;
}

std::int64_t RunConfig::get_int(std::string_view key) const { return parse_number<std::int64_t>(key, get(key)); }
std::uint64_t RunConfig::get_u64(std::string_view key) const { return parse_number<std::uint64_t>(key, get(key)); }
double RunConfig::get_double(std::string_view key) const { return parse_number<double>(key, get(key)); }

std::vector<int> RunConfig::get_int_list(std::string_view key) const {
  std::vector<int> out;
  for (auto item : split(get(key), ',')) out.push_back(parse_number<int>(key, item));
  return out;
}

std::vector<double> RunConfig::get_double_list(std::string_view key) const {
  std::vector<double> out;
  for (auto item : split(get(key), ',')) out.push_back(parse_number<double>(key, item));
  return out;
}

std::filesystem::path RunConfig::path(std::string_view key) const { return std::filesystem::path(get(key)); }

unsigned RunConfig::workers() const {
  const std::int64_t w = get_int("run.workers");
  if (w < 0 || w > 4096) throw ConfigError("run.workers must be in [0, 4096]");
  return static_cast<unsigned>(w);
}

scheme::SchemeConfig RunConfig::scheme() const {
  scheme::SchemeConfig s;
  s.hash = parse_hash_algorithm(get("scheme.hash"));
  s.salt = get("scheme.salt");
  s.username_len = static_cast<int>(get_int("scheme.username_len"));
  s.address_space_bits = static_cast<int>(get_int("scheme.address_space_bits"));
  const std::int64_t octet = get_int("scheme.high_octet");
  if (octet < 0 || octet > 255) throw ConfigError("scheme.high_octet must be in [0, 255]");
  s.high_octet = static_cast<std::uint8_t>(octet);
  s.slice_start = static_cast<int>(get_int("forum.slice_start"));
  s.validate();
  return s;
}

synthgen::ForumConfig RunConfig::forum() const {
  using synthgen::DrawLaw;
  synthgen::ForumConfig f;
  f.scheme = scheme();
  f.scheme.hash = parse_hash_algorithm(get("forum.hash"));
  f.scheme.salt = get("forum.salt");
  try {
    f.start = scheme::parse_date(get("forum.start"));
    f.topics_per_day = DrawLaw::parse(get("forum.topics_per_day"));
    f.posts_per_topic = DrawLaw::parse(get("forum.posts_per_topic"));
  } catch (const ParseError& e) {
    throw ConfigError(std::string("forum: ") + e.what());
  }
  f.days = static_cast<int>(get_int("forum.days"));
  if (f.days < 1) throw ConfigError("forum.days must be positive");
  f.reply_gap_minutes = get_double("forum.reply_gap_minutes");
  f.hour_weights = get_double_list("forum.hour_weights");
  f.seed = seed();
  f.first_topic_id = get_u64("forum.first_topic_id");
  f.first_post_id = get_u64("forum.first_post_id");
  f.regimes = scheme::SliceRegime::constant(f.start, f.last_day(), f.scheme.slice_start);
  const std::int64_t sw = get_int("forum.switch_day");
  if (sw >= 0) {
    if (sw >= f.days) throw ConfigError("forum.switch_day must be below forum.days");
    if (f.scheme.slice_start < 1) throw ConfigError("forum.switch_day needs forum.slice_start >= 1");
    try {
      f = synthgen::inject_regime_switch(f, f.start + std::chrono::days{sw});
    } catch (const RangeError& e) {
      throw ConfigError(e.what());
    }
  }
  f.validate();
  return f;
}

synthgen::PopulationModel RunConfig::population() const {
  synthgen::PopulationModel p;
  const std::int64_t n = get_int("population.addresses");
  if (n < 1) throw ConfigError("population.addresses must be positive");
  p.n_addresses = static_cast<std::size_t>(n);
  const std::string& law = get("population.law");
  if (law == "uniform")
    p.activity.kind = synthgen::ActivityLaw::Kind::uniform;
  else if (law == "stretched_exponential")
    p.activity.kind = synthgen::ActivityLaw::Kind::stretched_exponential;
  else
    throw ConfigError("population.law must be uniform or stretched_exponential");
  p.activity.a = get_double("population.a");
  p.activity.b = get_double("population.b");
  p.activity.c = get_double("population.c");
  p.churn_rate = get_double("population.churn_rate");
  for (auto entry : split(get("population.pool"), ';')) {
    std::istringstream in{std::string(entry)};
    std::string cidr, weight, label;
    in >> cidr >> weight >> label;
    if (cidr.empty() || weight.empty()) throw ConfigError("population.pool: expected 'cidr weight [label]'");
    synthgen::PoolRange r;
    try {
      r.range = CidrRange::parse(cidr);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("population.pool: ") + e.what());
    }
    r.weight = parse_number<double>("population.pool", weight);
    r.label = label;
    p.pool.push_back(r);
  }
  p.validate();
  return p;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

std::string RunConfig::digest() const { return hex_digest(HashAlgorithm::sha1, canonical()); }

std::string RunConfig::header_text(std::string_view command) const {
  return std::string("pseudaudit ") + PSEUDAUDIT_VERSION + " " + std::string(command) + "\nseed " + get("run.seed") +
         "\nconfig sha1 " + digest() + "\n";
}

}  // namespace pseudaudit::cli
