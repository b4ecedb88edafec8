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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pseudaudit/analytics.hpp"
#include "pseudaudit/attribute.hpp"
#include "pseudaudit/candidate_store.hpp"
#include "pseudaudit/chrono.hpp"
#include "pseudaudit/cidr.hpp"
#include "pseudaudit/csv.hpp"
#include "pseudaudit/dump.hpp"
#include "pseudaudit/enumerate.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/synthgen.hpp"
#include "pseudaudit/textnorm.hpp"
#include "pseudaudit/validate.hpp"
#include "run_config.hpp"

namespace pseudaudit::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string csv_header(const RunConfig& cfg, std::string_view command) {
  return comment_block(cfg.header_text(command));
}

std::string json_header(const RunConfig& cfg, std::string_view command) {
  std::string out;
  std::istringstream in(cfg.header_text(command));
  for (std::string line; std::getline(in, line);) out += "// " + line + "\n";
  return out;
}

fs::path input(const RunConfig& cfg, std::string_view key) {
  const fs::path p = cfg.path(key);
  if (p.empty()) throw ConfigError(std::string(key) + " is not set");
  if (!fs::exists(p)) throw ConfigError(std::string(key) + ": no such file " + p.string());
  return p;
}

fs::path output(const RunConfig& cfg, std::string_view key) {
  const fs::path p = cfg.path(key);
  if (p.empty()) throw ConfigError(std::string(key) + " is not set");
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

attribute::RunOptions run_options(const RunConfig& cfg) {
  attribute::RunOptions o;
  o.workers = cfg.workers();
  o.shuffle_days = cfg.get_u64("run.shuffle_days");
  return o;
}

std::vector<int> noise_slices(const RunConfig& cfg, const scheme::SchemeConfig& s, const scheme::SliceRegime& r) {
  const std::string& spec = cfg.get("calibrate.noise_slices");
  std::vector<int> out;
  if (spec == "unused")
    out = attribute::unused_positions(s, r);
  else if (spec == "next")
    out = {r.noise_slice()};
  else
    out = cfg.get_int_list("calibrate.noise_slices");
  if (out.empty()) throw ConfigError("calibrate.noise_slices selects no position");
  const auto used = r.slices_in_use();
  for (int p : out) {
    if (std::binary_search(used.begin(), used.end(), p))
      throw ConfigError("calibrate.noise_slices includes position " + std::to_string(p) + ", which a regime uses");
  }
  return out;
}

void check_positions(const scheme::SchemeConfig& s, std::span<const int> positions) {
  for (int p : positions)
    if (p < 0 || p + s.username_len > digest_hex_length(s.hash))
      throw ConfigError("position " + std::to_string(p) + " does not fit a " +
                        std::to_string(digest_hex_length(s.hash)) + "-character digest");
}

struct Inputs {
  scheme::SchemeConfig scheme;
  Dump dump;
  scheme::SliceRegime regimes;
};

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in{cfg.scheme(), {}, scheme::SliceRegime::constant(scheme::Date{}, scheme::Date{}, 0)};
  const fs::path dump = input(cfg, "paths.dump");
  const fs::path regimes = input(cfg, "paths.regimes");
  in.dump = read_dump(dump, in.scheme.username_len);
  in.regimes = scheme::SliceRegime::load(regimes);
  return in;
}

enumerate::CandidateStore load_store(const RunConfig& cfg, const scheme::SchemeConfig& s) {
  const fs::path dir = input(cfg, "paths.store");
  if (!fs::exists(dir / "index.jsonl")) throw ConfigError("paths.store: " + dir.string() + " has no index.jsonl");
  return enumerate::CandidateStore::load(dir, s.username_len);
}

/// Fails early when the store lacks a position the command needs.
void require_positions(const enumerate::CandidateStore& store, const Dump& dump, std::span<const int> positions) {
  if (dump.empty()) return;
  for (int p : positions)
    if (!store.has_topic(dump.front().topic, p))
      throw UsageError("candidate store has no sets at position " + std::to_string(p) + "; rerun enumerate");
}

// ---------------------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, std::ostream& err) {
  const synthgen::ForumConfig forum = cfg.forum();
  const synthgen::PopulationModel population = cfg.population();
  const synthgen::Forum f = synthgen::generate(population, forum);
  const std::string header = csv_header(cfg, "simulate");

  write_dump(output(cfg, "paths.dump"), f.dump, header);
  write_truth(output(cfg, "paths.truth"), f.truth, header);
  write_file_atomic(output(cfg, "paths.regimes"), header + forum.effective_regimes().to_text());
  const auto anchors =
      chrono::AnchorSet::thinned(synthgen::sample_anchors(f.dump, cfg.get_double("anchors.fraction"), cfg.seed()));
  chrono::write_anchors(output(cfg, "paths.anchors"), anchors, header);

  const auto labels = synthgen::planted_labels(population);
  if (!labels.empty() && cfg.is_set("paths.labels")) {
    std::ostringstream out;
    out << header;
    csv::write_row(out, {"cidr", "label"});
    for (const auto& [range, label] : labels) csv::write_row(out, {range.to_string(), label});
    write_file_atomic(output(cfg, "paths.labels"), out.str());
  }
  std::set<std::uint64_t> topics;
  for (const Post& p : f.dump) topics.insert(p.topic.value);
  err << "simulate: " << f.dump.size() << " posts in " << topics.size() << " topics by " << f.addresses.size()
      << " addresses\n";
  return kExitOk;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& err) {
  const Inputs in = load_inputs(cfg);
  std::set<int> slices;
  for (int p : in.regimes.slices_in_use()) slices.insert(p);
  for (int p : noise_slices(cfg, in.scheme, in.regimes)) slices.insert(p);
  for (int p : cfg.get_int_list("scan.positions")) slices.insert(p);
  const std::vector<int> positions(slices.begin(), slices.end());
  check_positions(in.scheme, positions);

  enumerate::ScanOptions opts;
  opts.workers = cfg.workers();
  const std::int64_t chunk = cfg.get_int("enumerate.chunk_blocks");
  if (chunk < 1) throw ConfigError("enumerate.chunk_blocks must be positive");
  opts.chunk_blocks = static_cast<std::uint64_t>(chunk);

  const auto store = enumerate::build_store(in.dump, in.scheme, positions, opts);
  const fs::path dir = output(cfg, "paths.store");
  store.save(dir);
  std::string manifest = csv_header(cfg, "enumerate") + "positions";
  for (int p : positions) manifest += " " + std::to_string(p);
  write_file_atomic(dir / "manifest.txt", manifest + "\n");
  err << "enumerate: " << store.topic_count() << " topic files at " << positions.size() << " positions ("
      << enumerate::kernel_isa() << ")\n";
  return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& err) {
  const Inputs in = load_inputs(cfg);
  const auto store = load_store(cfg, in.scheme);
  const std::vector<int> slices = noise_slices(cfg, in.scheme, in.regimes);
  require_positions(store, in.dump, slices);

  const attribute::Corpus base(in.dump, in.regimes);
  std::vector<attribute::Corpus> pinned;
  pinned.reserve(slices.size());
  for (int p : slices) pinned.push_back(base.with_constant_slice(p));
  std::vector<attribute::EvaluationContext> ctxs;
  for (const auto& c : pinned) ctxs.push_back({&c, &store, in.scheme});

  const attribute::Calibration cal = attribute::calibrate(ctxs, slices, run_options(cfg));
  write_file_atomic(output(cfg, "paths.calibration"),
                    json_header(cfg, "calibrate") + attribute::calibration_json(cal));
  for (const auto& w : cal.windows)
    err << "calibrate: " << attribute::days(w.kind) << "-day threshold log10 p = " << w.threshold_log_p / std::log(10.0)
        << (w.clamped ? " (clamped)" : "") << "\n";
  return kExitOk;
}

attribute::Thresholds thresholds(const RunConfig& cfg) {
  using attribute::WindowKind;
  const std::pair<WindowKind, const char*> keys[] = {{WindowKind::d7, "attribute.threshold_log10_p7"},
                                                     {WindowKind::d31, "attribute.threshold_log10_p31"},
                                                     {WindowKind::d91, "attribute.threshold_log10_p91"}};
  bool all = true;
  for (const auto& [kind, key] : keys) all = all && cfg.is_set(key);
  attribute::Thresholds t;
  if (!all) t = attribute::read_thresholds(cfg.path("paths.calibration"));
  for (const auto& [kind, key] : keys)
    if (cfg.is_set(key)) t.log_for(kind) = cfg.get_double(key) * std::log(10.0);
  try {
    t.validate();
  } catch (const CalibrationError& e) {
    throw ConfigError(std::string("thresholds: ") + e.what());
  }
  return t;
}

int cmd_assign(const RunConfig& cfg, std::ostream& err) {
  const attribute::Thresholds t = thresholds(cfg);
  const Inputs in = load_inputs(cfg);
  const auto store = load_store(cfg, in.scheme);
  const auto used = in.regimes.slices_in_use();
  require_positions(store, in.dump, used);
  const attribute::Corpus corpus(in.dump, in.regimes);
  const attribute::EvaluationContext ctx{&corpus, &store, in.scheme};
  const auto records = attribute::run_pipeline(ctx, t, run_options(cfg));
  attribute::write_assignments(output(cfg, "paths.assignments"), records, csv_header(cfg, "assign"));
  err << "assign: " << records.size() << " of " << in.dump.size() << " posts assigned\n";
  return kExitOk;
}

int cmd_scan_positions(const RunConfig& cfg, std::ostream& err) {
  const Inputs in = load_inputs(cfg);
  const auto store = load_store(cfg, in.scheme);
  const std::vector<int> positions = cfg.get_int_list("scan.positions");
  if (positions.size() < 2) throw ConfigError("scan.positions needs at least two positions");
  check_positions(in.scheme, positions);
  require_positions(store, in.dump, positions);
  const auto scan = attribute::scan_positions(in.dump, store, in.scheme, positions, run_options(cfg));

  const std::string header = csv_header(cfg, "scan-positions");
  std::ostringstream series;
  series << header;
  csv::write_row(series, {"week", "week_start", "position", "posts", "mean_min_p"});
  std::map<std::int64_t, scheme::Date> week_start;
  for (const auto& p : scan.series) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p.mean_min_p);
    csv::write_row(series, {std::to_string(p.week), scheme::format_date(p.week_start), std::to_string(p.position),
                            std::to_string(p.posts), buf});
    week_start.emplace(p.week, p.week_start);
  }
  write_file_atomic(output(cfg, "paths.scan"), series.str());

  std::string lines = header;
  for (const auto& c : scan.crossings) {
    json j;
    j["position_a"] = c.position_a;
    j["position_b"] = c.position_b;
    j["week"] = c.week ? json(*c.week) : json(nullptr);
    j["week_start"] = c.week ? json(scheme::format_date(week_start.at(*c.week))) : json(nullptr);
    j["improvement"] = c.improvement;
    lines += j.dump() + "\n";
    if (c.week)
      err << "scan-positions: " << c.position_a << "/" << c.position_b << " cross in week " << *c.week << " ("
          << scheme::format_date(week_start.at(*c.week)) << ")\n";
  }
  write_file_atomic(output(cfg, "paths.crossings"), lines);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& err) {
  const auto records = attribute::read_assignments(input(cfg, "paths.assignments"));
  const auto bogon_ranges = cfg.is_set("paths.bogons") ? load_cidr_file(input(cfg, "paths.bogons")) : default_bogons();
  const CidrSet bogons(bogon_ranges);
  const std::size_t n_bogons = validate::bogon_check(records, bogons);
  bool failed = n_bogons > 0;
  if (n_bogons > 0) err << "validate: " << n_bogons << " assignments to bogon addresses\n";

  json report;
  report["assignments"] = records.size();
  report["bogons"] = n_bogons;
  report["score"] = nullptr;
  report["uniformity"] = nullptr;

  const fs::path truth_path = cfg.path("paths.truth");
  if (!truth_path.empty() && fs::exists(truth_path)) {
    const scheme::SchemeConfig s = cfg.scheme();
    const Dump dump = read_dump(input(cfg, "paths.dump"), s.username_len);
    const GroundTruth truth = read_truth(truth_path);
    const validate::ScoreReport r = validate::score(records, dump, truth);
    report["score"] = json::parse(validate::to_json(r));
    err << "validate: " << r.assigned << " assigned, " << r.correct << " correct";
    if (r.precision) err << ", precision " << *r.precision;
    err << ", heavy-poster recall " << r.heavy_recall << "\n";
    if (cfg.is_set("validate.min_precision")) {
      const double min = cfg.get_double("validate.min_precision");
      if (r.precision && *r.precision < min) {
        err << "validate: precision below " << min << "\n";
        failed = true;
      }
    }
  }

  if (cfg.is_set("validate.uniformity_topic")) {
    const TopicId topic{cfg.get_u64("validate.uniformity_topic")};
    scheme::SchemeConfig s = cfg.scheme();
    enumerate::ScanOptions opts;
    opts.workers = cfg.workers();
    const auto hist = enumerate::username_histogram(topic, s, opts);
    const validate::Chi2Result chi = validate::uniformity_chi2(hist);
    const double alpha = cfg.get_double("validate.alpha");
    json u;
    u["topic"] = topic.value;
    u["slice_start"] = s.slice_start;
    u["statistic"] = chi.statistic;
    u["degrees_of_freedom"] = chi.degrees_of_freedom;
    u["p_value"] = chi.p_value;
    u["log_p_value"] = chi.log_p_value;
    u["alpha"] = alpha;
    u["rejects"] = chi.rejects(alpha);
    report["uniformity"] = u;
    err << "validate: uniformity chi2 " << chi.statistic << " on " << chi.degrees_of_freedom << " df, p = " << chi.p_value
        << "\n";
    if (chi.rejects(alpha)) failed = true;
  }
  report["passed"] = !failed;
  write_file_atomic(output(cfg, "paths.score"), json_header(cfg, "validate") + report.dump(2) + "\n");
  return failed ? kExitValidation : kExitOk;
}

int cmd_normalize_text(const RunConfig& cfg, std::ostream& err) {
  const fs::path in = input(cfg, "paths.text_in");
  const textnorm::Resources res = textnorm::load_resources(input(cfg, "paths.lexicon"));
  const auto rows = csv::read_file(in, {"post_id", "text"});
  std::ostringstream out;
  out << csv_header(cfg, "normalize-text");
  csv::write_row(out, {"post_id", "text"});
  std::size_t changed = 0;
  for (const auto& r : rows) {
    std::string norm = textnorm::normalize(r.fields[1], res);
    if (norm != r.fields[1]) ++changed;
    csv::write_row(out, {r.fields[0], norm});
  }
  write_file_atomic(output(cfg, "paths.text_out"), out.str());
  err << "normalize-text: " << rows.size() << " posts, " << changed << " changed\n";
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& err) {
  const scheme::SchemeConfig s = cfg.scheme();
  const Dump dump = read_dump(input(cfg, "paths.dump"), s.username_len);
  const std::string& source = cfg.get("report.source");
  std::vector<attribute::AssignmentRecord> records;
  if (source == "assignments") {
    records = attribute::read_assignments(input(cfg, "paths.assignments"));
  } else if (source == "truth") {
    for (const auto& [post, addr] : read_truth(input(cfg, "paths.truth")).rows()) {
      attribute::AssignmentRecord r;
      r.post_id = post;
      r.address = addr;
      records.push_back(r);
    }
  } else {
    throw ConfigError("report.source must be assignments or truth");
  }

  std::string out = json_header(cfg, "report");
  auto emit = [&](const json& j) { out += j.dump() + "\n"; };
  const auto counts = analytics::RankCounts::from_assignments(records);
  emit(json{{"kind", "summary"}, {"source", source}, {"posts", counts.total()}, {"addresses", counts.counts.size()}});

  if (!counts.counts.empty()) {
    for (double f : cfg.get_double_list("report.fractions"))
      emit(json{{"kind", "concentration"}, {"f", f}, {"share", analytics::concentration(counts, f)}});
    const std::int64_t want = cfg.get_int("report.fit_ranks");
    const std::size_t ranks = want > 0 ? static_cast<std::size_t>(want) : counts.counts.size();
    if (ranks >= 3 && ranks <= counts.counts.size()) {
      const auto fit = analytics::fit_stretched_exponential(counts, ranks);
      emit(json{{"kind", "fit"}, {"a", fit.a}, {"b", fit.b}, {"c", fit.c}, {"fit_ranks", fit.fit_ranks},
                {"rss", fit.rss}});
      try {
        const auto x = analytics::extrapolate_population(fit);
        emit(json{{"kind", "extrapolation"}, {"n_star", x.n_star}, {"total_posts", x.total_posts}});
      } catch (const DomainError& e) {
        err << "report: no extrapolation: " << e.what() << "\n";
      }
    } else {
      err << "report: skipping the fit; " << counts.counts.size() << " addresses, " << ranks << " ranks requested\n";
    }
  }

  if (cfg.is_set("paths.labels")) {
    const auto labels = analytics::LabelTable::load(input(cfg, "paths.labels"));
    for (const auto& row : analytics::label_aggregate(records, labels))
      emit(json{{"kind", "label"}, {"label", row.label}, {"posts", row.posts}, {"share", row.share}});
  }

  std::vector<std::int64_t> stamps;
  stamps.reserve(dump.size());
  for (const Post& p : dump) stamps.push_back(p.timestamp);
  const int bucket = static_cast<int>(cfg.get_int("report.bucket_minutes"));
  if (!stamps.empty()) {
    for (const auto& y : analytics::time_profile(stamps, bucket, static_cast<int>(cfg.get_int("report.utc_offset_minutes"))))
      emit(json{{"kind", "time_profile"}, {"year", y.year}, {"days", y.days}, {"bucket_minutes", bucket},
                {"per_minute", y.per_minute}});
  }

  const fs::path anchors_path = cfg.path("paths.anchors");
  if (!anchors_path.empty() && fs::exists(anchors_path)) {
    const auto anchors = chrono::read_anchors(anchors_path);
    std::vector<std::uint64_t> ids;
    std::vector<double> errors;
    for (const Post& p : dump) {
      ids.push_back(p.post_id);
      if (!anchors.empty() && !anchors.contains(p.post_id))
        errors.push_back(std::abs(chrono::interpolate(anchors, p.post_id) - static_cast<double>(p.timestamp)));
    }
    const auto g = chrono::gap_stats(anchors, ids);
    json j{{"kind", "anchor_gaps"}, {"anchors", anchors.size()}, {"bracketed", g.bracketed}, {"outside", g.outside},
           {"mean_s", g.mean}, {"p95_s", g.p95}, {"p99_s", g.p99}};
    if (!errors.empty()) {
      std::sort(errors.begin(), errors.end());
      j["median_abs_error_s"] = errors[(errors.size() - 1) / 2];
    }
    emit(j);
  }
  write_file_atomic(output(cfg, "paths.report"), out);
  err << "report: " << counts.counts.size() << " addresses, " << counts.total() << " posts\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"Attribution audit for hash-derived forum pseudonyms"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::vector<std::string> sets;
  app.add_option("-c,--config", config_path, "config file of 'section.key = value' lines");
  app.add_option("--set", sets, "override a config key, KEY=VALUE (repeatable)");

  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> flag_opts;
  for (const KeySpec& k : RunConfig::keys())
    flag_opts[k.key] = app.add_option(std::string("--") + k.key, flags[k.key], k.help)->group("Config keys");
  std::string seed, workers;
  auto* seed_opt = app.add_option("--seed", seed, "alias of --run.seed");
  auto* workers_opt = app.add_option("-j,--workers", workers, "alias of --run.workers");

  using Handler = int (*)(const RunConfig&, std::ostream&);
  const std::pair<const char*, std::pair<Handler, const char*>> commands[] = {
      {"simulate", {cmd_simulate, "generate a synthetic forum, ground truth, regimes and anchors"}},
      {"enumerate", {cmd_enumerate, "build the candidate store for every topic in the dump"}},
      {"calibrate", {cmd_calibrate, "derive thresholds from noise runs at unused digest positions"}},
      {"assign", {cmd_assign, "run the three-window attribution pipeline"}},
      {"scan-positions", {cmd_scan_positions, "compare weekly match strength across digest positions"}},
      {"validate", {cmd_validate, "bogon check, ground-truth score and optional uniformity test"}},
      {"normalize-text", {cmd_normalize_text, "normalize post text (quotes, symbols, leetspeak)"}},
      {"report", {cmd_report, "concentration, fit, labels, time profile and anchor gaps"}},
  };
  std::string text_in, text_out;
  CLI::Option* in_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, cmd.second);
    if (std::string_view(name) == "normalize-text") {
      in_opt = sub->add_option("--in", text_in, "alias of --paths.text_in");
      out_opt = sub->add_option("--out", text_out, "alias of --paths.text_out");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream diag;
    const int code = app.exit(e, out, diag);
    if (code == 0) {
      std::cout << out.str();
      return kExitOk;
    }
    err << diag.str();
    return kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto& [key, opt] : flag_opts)
      if (opt->count() > 0) cfg.set(key, flags[key]);
    if (seed_opt->count() > 0) cfg.set("run.seed", seed);
    if (workers_opt->count() > 0) cfg.set("run.workers", workers);
    if (in_opt && in_opt->count() > 0) cfg.set("paths.text_in", text_in);
    if (out_opt && out_opt->count() > 0) cfg.set("paths.text_out", text_out);

    for (const auto& [name, cmd] : commands)
      if (app.got_subcommand(name)) return cmd.first(cfg, err);
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CalibrationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace pseudaudit::cli
