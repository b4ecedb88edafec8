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

#include "pseudaudit/dump.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pseudaudit/csv.hpp"
#include "pseudaudit/errors.hpp"

namespace pseudaudit {

namespace {

template <typename T>
T parse_int(const std::string& s, std::size_t line, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError(std::string("bad ") + what + " '" + s + "'", line);
  return v;
}

}  // namespace

GroundTruth::GroundTruth(std::vector<std::pair<std::uint64_t, Address>> rows) : rows_(std::move(rows)) {
  std::sort(rows_.begin(), rows_.end());
  for (std::size_t i = 1; i < rows_.size(); ++i)
    if (rows_[i].first == rows_[i - 1].first)
      throw DataError("ground truth lists post " + std::to_string(rows_[i].first) + " twice");
}

std::optional<Address> GroundTruth::find(std::uint64_t post_id) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), post_id,
                             [](const auto& row, std::uint64_t id) { return row.first < id; });
  if (it == rows_.end() || it->first != post_id) return std::nullopt;
  return it->second;
}

std::string comment_block(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    out += "# ";
    out.append(text.substr(pos, nl - pos));
    out += '\n';
    pos = nl + 1;
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_dump(const std::filesystem::path& path, const Dump& dump, std::string_view header) {
  std::ostringstream out;
  out << header << "post_id,topic_id,username,timestamp\n";
  for (const Post& p : dump)
    out << p.post_id << ',' << p.topic.value << ',' << p.username.text() << ',' << p.timestamp << '\n';
  write_file_atomic(path, out.str());
}

Dump read_dump(const std::filesystem::path& path, int username_len) {
  Dump dump;
  for (const auto& rec : csv::read_file(path, {"post_id", "topic_id", "username", "timestamp"})) {
    Post p;
    p.post_id = parse_int<std::uint64_t>(rec.fields[0], rec.line, "post_id");
    p.topic = TopicId{parse_int<std::uint64_t>(rec.fields[1], rec.line, "topic_id")};
    if (p.topic.value == 0) throw ParseError("topic ids start at 1", rec.line);
    try {
      p.username = Username::parse(rec.fields[2]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), rec.line);
    }
    if (p.username.length() != username_len)
      throw DataError(path.string() + ": username '" + rec.fields[2] + "' at line " + std::to_string(rec.line) +
                      " does not have length " + std::to_string(username_len));
    p.timestamp = parse_int<std::int64_t>(rec.fields[3], rec.line, "timestamp");
    if (!dump.empty() && p.post_id <= dump.back().post_id)
      throw DataError(path.string() + ": post ids must be strictly increasing (line " + std::to_string(rec.line) +
                      ")");
    dump.push_back(p);
  }
  return dump;
}

void write_truth(const std::filesystem::path& path, const GroundTruth& truth, std::string_view header) {
  std::ostringstream out;
  out << header << "post_id,address\n";
  for (const auto& [id, addr] : truth.rows()) out << id << ',' << render_dotted(addr) << '\n';
  write_file_atomic(path, out.str());
}

GroundTruth read_truth(const std::filesystem::path& path) {
  std::vector<std::pair<std::uint64_t, Address>> rows;
  for (const auto& rec : csv::read_file(path, {"post_id", "address"})) {
    auto a = parse_dotted(rec.fields[1]);
    if (!a) throw ParseError("bad address '" + rec.fields[1] + "'", rec.line);
    rows.emplace_back(parse_int<std::uint64_t>(rec.fields[0], rec.line, "post_id"), *a);
  }
  return GroundTruth(std::move(rows));
}

}  // namespace pseudaudit
