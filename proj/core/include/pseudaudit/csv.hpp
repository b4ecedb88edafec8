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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pseudaudit::csv {

/// Minimal RFC 4180 handling: fields split on ',', double-quoted fields may
/// contain commas, quotes ("") and newlines.
using Row = std::vector<std::string>;

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next record, skipping blank lines and lines that start with '#'.
  /// Returns false at end of input. Throws ParseError on an unterminated
  /// quote.
  bool next(Row& row);
  /// 1-based line number where the last returned record started.
  std::size_t line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

struct Record {
  std::size_t line = 0;
  Row fields;
};

/// Reads a whole file and checks the first record against `header`.
/// Throws ParseError on a header mismatch or a row of the wrong width.
std::vector<Record> read_file(const std::filesystem::path& path, const std::vector<std::string>& header);

std::string quote(std::string_view field);
void write_row(std::ostream& out, const Row& row);

}  // namespace pseudaudit::csv
