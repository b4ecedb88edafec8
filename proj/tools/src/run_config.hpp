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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pseudaudit/scheme.hpp"
#include "pseudaudit/synthgen.hpp"

namespace pseudaudit::cli {

struct KeySpec {
  const char* key;
  const char* default_value;
  const char* help;
  bool is_path = false;
};

/// Flat `section.key = value` configuration. Every key has a default; an
/// unknown key is a ConfigError.
class RunConfig {
 public:
  RunConfig();

  static const std::vector<KeySpec>& keys();

  /// '#' starts a comment. Relative paths resolve against the file's
  /// directory.
  void load_file(const std::filesystem::path& path);
  /// Relative paths resolve against `base` when it is non-empty.
  void set(std::string_view key, std::string value, const std::filesystem::path& base = {});

  const std::string& get(std::string_view key) const;
  bool is_set(std::string_view key) const { return !get(key).empty(); }
  std::int64_t get_int(std::string_view key) const;
  std::uint64_t get_u64(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::vector<int> get_int_list(std::string_view key) const;
  std::vector<double> get_double_list(std::string_view key) const;
  /// Empty path when the key is empty.
  std::filesystem::path path(std::string_view key) const;

  std::uint64_t seed() const { return get_u64("run.seed"); }
  unsigned workers() const;

  /// The attributor's view of the scheme.
  scheme::SchemeConfig scheme() const;
  synthgen::ForumConfig forum() const;
  synthgen::PopulationModel population() const;

  /// Sorted `key = value` lines.
  std::string canonical() const;
  /// SHA-1 of canonical().
  std::string digest() const;
  /// Version, command, seed and config digest, one per line, uncommented.
  std::string header_text(std::string_view command) const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace pseudaudit::cli
