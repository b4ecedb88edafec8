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
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pseudaudit::textnorm {

/// Lowercase words without whitespace; profanity is a marked subset.
class Lexicon {
 public:
  /// Throws ConfigError on uppercase or whitespace.
  void add_word(std::string_view word);
  void add_profanity(std::string_view word);

  bool contains(std::string_view word) const;
  bool is_profanity(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }

  /// One token per line, '#' comments. Throws ConfigError with the line.
  static Lexicon load(const std::filesystem::path& english, const std::filesystem::path& profanity);

 private:
  std::unordered_set<std::string> words_;
  std::unordered_set<std::string> profanity_;
};

/// Obfuscation character -> replacement letters, in preference order.
class SubstitutionTable {
 public:
  /// 4->a 3->e 0->o 1->{i,l} $->s @->a 5->s 7->t.
  static SubstitutionTable defaults();
  /// Lines "<char> <letters>", '#' comments. Throws ParseError.
  static SubstitutionTable parse(std::string_view text);
  static SubstitutionTable load(const std::filesystem::path& path);

  /// Throws ConfigError unless every replacement is a lowercase letter.
  void set(char from, std::string letters);
  /// Empty when `c` is not substitutable.
  std::string_view replacements(char c) const;

 private:
  std::map<char, std::string> table_;
};

/// Whole-token rewrites matched case-insensitively.
class CanonMap {
 public:
  /// Throws ConfigError when `to` is not lowercase or is itself a key.
  void add(std::string_view from, std::string_view to);
  /// Null when absent.
  const std::string* find(std::string_view token) const;
  std::size_t size() const noexcept { return map_.size(); }

  /// CSV `from,to`. Throws ParseError / ConfigError.
  static CanonMap load(const std::filesystem::path& path);

 private:
  std::unordered_map<std::string, std::string> map_;
};

/// Tokens (case-insensitive) that are never transformed.
using SkipList = std::unordered_set<std::string>;
SkipList default_skip_list();
SkipList load_skip_list(const std::filesystem::path& path);

struct Resources {
  Lexicon lexicon;
  SubstitutionTable table = SubstitutionTable::defaults();
  CanonMap canon;
  SkipList skip = default_skip_list();
};

/// Reads english.txt, profanity.txt, leet.txt, canon.csv and skip.txt from
/// `dir`.
Resources load_resources(const std::filesystem::path& dir);

/// Drops [quote]...[/quote] and <blockquote>...</blockquote> blocks, nested
/// or not; an unclosed block runs to the end. Everything else is kept
/// verbatim; an all-whitespace result becomes "".
std::string strip_quotes(std::string_view text);

/// The word with every ASCII symbol (not alphanumeric, not an apostrophe)
/// removed, if that lowercased residue is a lexicon word; else `word`.
std::string desymbol(std::string_view word, const Lexicon& lexicon);

inline constexpr int kMaxSubstitutable = 8;

/// Best lexicon word reachable by substituting characters; prefers
/// profanity, then fewer substitutions, then lexicographic order. Unchanged
/// when the word has no letter, more than kMaxSubstitutable substitutable
/// characters, or no hit.
std::string deleet(std::string_view word, const SubstitutionTable& table, const Lexicon& lexicon);

/// strip_quotes, then per whitespace-separated token (edge punctuation
/// kept aside): canon map, else desymbol, else deleet. Idempotent.
std::string normalize(std::string_view text, const Resources& resources);

}  // namespace pseudaudit::textnorm
