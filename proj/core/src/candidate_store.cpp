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

#include "pseudaudit/candidate_store.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>

#include <json.hpp>

#include "pseudaudit/errors.hpp"

namespace pseudaudit::enumerate {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
               static_cast<char>(v >> 24)};
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

class Reader {
 public:
  Reader(std::vector<char> data, std::string name) : data_(std::move(data)), name_(std::move(name)) {}

  const char* take(std::size_t n) {
    if (data_.size() - pos_ < n) throw DataError("truncated candidate file " + name_);
    const char* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32() {
    const auto* p = reinterpret_cast<const unsigned char*>(take(4));
    return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
           (std::uint32_t{p[3]} << 24);
  }
  std::uint64_t u64() {
    const std::uint64_t lo = u32();
    return lo | (std::uint64_t{u32()} << 32);
  }
  bool done() const noexcept { return pos_ == data_.size(); }

 private:
  std::vector<char> data_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_topic_file(const std::filesystem::path& path, TopicId topic, int slice_start,
                      std::span<const CandidateSet> sets, int username_len) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write("PFC1", 4);
  put_u64(out, topic.value);
  out.put(static_cast<char>(slice_start));
  put_u32(out, static_cast<std::uint32_t>(sets.size()));
  for (const CandidateSet& s : sets) {
    if (s.topic != topic || s.slice_start != slice_start)
      throw UsageError("candidate set does not belong to this topic file");
    const std::string name = s.username.text();
    if (static_cast<int>(name.size()) != username_len) throw UsageError("username length mismatch");
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put_u32(out, static_cast<std::uint32_t>(s.addresses.size()));
    for (std::uint32_t a : s.addresses) put_u32(out, a);
  }
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<CandidateSet> read_topic_file(const std::filesystem::path& path, int username_len) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing candidate file " + path.string());
  std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(std::move(data), path.string());
  if (std::memcmp(r.take(4), "PFC1", 4) != 0) throw DataError("bad magic in " + path.string());
  const TopicId topic{r.u64()};
  const int slice = static_cast<unsigned char>(*r.take(1));
  const std::uint32_t n = r.u32();
  std::vector<CandidateSet> sets;
  sets.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    CandidateSet s;
    s.topic = topic;
    s.slice_start = slice;
    try {
      s.username = Username::parse(std::string_view(r.take(static_cast<std::size_t>(username_len)),
                                                    static_cast<std::size_t>(username_len)));
    } catch (const ParseError& e) {
      throw DataError(path.string() + ": " + e.what());
    }
    const std::uint32_t count = r.u32();
    s.addresses.resize(count);
    for (auto& a : s.addresses) a = r.u32();
    sets.push_back(std::move(s));
  }
  if (!r.done()) throw DataError("trailing bytes in " + path.string());
  return sets;
}

void CandidateStore::add_topic(TopicId topic, int slice_start, std::vector<CandidateSet> sets) {
  for (const auto& s : sets)
    if (s.topic != topic || s.slice_start != slice_start)
      throw UsageError("candidate set does not belong to topic " + to_string(topic));
  std::sort(sets.begin(), sets.end(),
            [](const CandidateSet& a, const CandidateSet& b) { return a.username < b.username; });
  entries_[key(topic, slice_start)] = Entry{topic, slice_start, std::move(sets)};
}

bool CandidateStore::has_topic(TopicId topic, int slice_start) const {
  return entries_.count(key(topic, slice_start)) != 0;
}

const std::vector<std::uint32_t>* CandidateStore::find(TopicId topic, int slice_start, Username username) const {
  auto it = entries_.find(key(topic, slice_start));
  if (it == entries_.end()) return nullptr;
  const auto& sets = it->second.sets;
  auto s = std::lower_bound(sets.begin(), sets.end(), username,
                            [](const CandidateSet& c, const Username& u) { return c.username < u; });
  if (s == sets.end() || s->username != username) return nullptr;
  return &s->addresses;
}

std::string CandidateStore::file_name(TopicId topic, int slice_start) {
  return "t" + to_string(topic) + "_s" + std::to_string(slice_start) + ".pfc";
}

std::vector<const CandidateSet*> CandidateStore::all_sets() const {
  std::map<std::pair<std::uint64_t, int>, const Entry*> ordered;
  for (const auto& [k, e] : entries_) ordered[{e.topic.value, e.slice_start}] = &e;
  std::vector<const CandidateSet*> out;
  for (const auto& [k, e] : ordered)
    for (const auto& s : e->sets) out.push_back(&s);
  return out;
}

void CandidateStore::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::map<std::pair<std::uint64_t, int>, const Entry*> ordered;
  for (const auto& [k, e] : entries_) ordered[{e.topic.value, e.slice_start}] = &e;
  std::ofstream index(dir / "index.jsonl", std::ios::trunc);
  if (!index) throw DataError("cannot write index in " + dir.string());
  for (const auto& [k, e] : ordered) {
    const std::string file = file_name(e->topic, e->slice_start);
    write_topic_file(dir / file, e->topic, e->slice_start, e->sets, username_len_);
    nlohmann::ordered_json line;
    line["topic"] = e->topic.value;
    line["slice_start"] = e->slice_start;
    auto& names = line["usernames"] = nlohmann::ordered_json::array();
    auto& sizes = line["sizes"] = nlohmann::ordered_json::array();
    for (const auto& s : e->sets) {
      names.push_back(s.username.text());
      sizes.push_back(s.addresses.size());
    }
    line["file"] = file;
    index << line.dump() << '\n';
  }
}

CandidateStore CandidateStore::load(const std::filesystem::path& dir, int username_len) {
  std::ifstream index(dir / "index.jsonl");
  if (!index) throw DataError("no index.jsonl in candidate store " + dir.string());
  CandidateStore store(username_len);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(index, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("index.jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
    auto sets = read_topic_file(dir / j.at("file").get<std::string>(), username_len);
    const TopicId topic{j.at("topic").get<std::uint64_t>()};
    const int slice = j.at("slice_start").get<int>();
    for (const auto& s : sets)
      if (s.topic != topic || s.slice_start != slice)
        throw DataError("index entry disagrees with file header for topic " + to_string(topic));
    store.add_topic(topic, slice, std::move(sets));
  }
  return store;
}

std::vector<TopicWorkOrder> work_orders(const Dump& dump, std::span<const int> slice_starts) {
  std::map<std::uint64_t, TopicWorkOrder> by_topic;
  for (const Post& p : dump) {
    auto& order = by_topic[p.topic.value];
    order.topic = p.topic;
    order.usernames.push_back(p.username);
  }
  std::vector<TopicWorkOrder> out;
  out.reserve(by_topic.size());
  for (auto& [id, order] : by_topic) {
    order.slice_starts.assign(slice_starts.begin(), slice_starts.end());
    order.normalize();
    out.push_back(std::move(order));
  }
  return out;
}

CandidateStore build_store(const Dump& dump, const scheme::SchemeConfig& config, std::span<const int> slice_starts,
                           const ScanOptions& options) {
  CandidateStore store(config.username_len);
  for (const TopicWorkOrder& order : work_orders(dump, slice_starts)) {
    std::vector<CandidateSet> sets = candidates_for_topic(order, config, options);
    for (int slice : order.slice_starts) {
      std::vector<CandidateSet> at_slice;
      for (CandidateSet& s : sets)
        if (s.slice_start == slice) at_slice.push_back(std::move(s));
      store.add_topic(order.topic, slice, std::move(at_slice));
    }
  }
  return store;
}

}  // namespace pseudaudit::enumerate
