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

#include "pseudaudit/textnorm.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pseudaudit/csv.hpp"
#include "pseudaudit/errors.hpp"

namespace pseudaudit::textnorm {

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_symbol(char c) {
  return static_cast<unsigned char>(c) < 0x80 && !is_alnum(c) && c != '\'' && !is_space(c);
}
// Sentence punctuation peeled off token edges before matching.
bool is_edge_punct(char c) { return std::string_view(".,!?;:\"()[]{}").find(c) != std::string_view::npos; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::vector<std::pair<std::size_t, std::string>> read_tokens(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.emplace_back(n, line);
  }
  return out;
}

void check_token(std::string_view word) {
  if (word.empty()) throw ConfigError("empty lexicon entry");
  for (char c : word) {
    if (is_space(c)) throw ConfigError("lexicon entry '" + std::string(word) + "' contains whitespace");
    if (c >= 'A' && c <= 'Z') throw ConfigError("lexicon entry '" + std::string(word) + "' is not lowercase");
  }
}

// Case-insensitive match of `tag` at text[pos].
bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view tag) {
  if (text.size() - pos < tag.size()) return false;
  return lower(text.substr(pos, tag.size())) == tag;
}

}  // namespace

void Lexicon::add_word(std::string_view word) {
  check_token(word);
  words_.emplace(word);
}

void Lexicon::add_profanity(std::string_view word) {
  add_word(word);
  profanity_.emplace(word);
}

bool Lexicon::contains(std::string_view word) const { return words_.count(std::string(word)) > 0; }
bool Lexicon::is_profanity(std::string_view word) const { return profanity_.count(std::string(word)) > 0; }

Lexicon Lexicon::load(const std::filesystem::path& english, const std::filesystem::path& profanity) {
  Lexicon lex;
  auto fill = [&](const std::filesystem::path& p, bool prof) {
    for (const auto& [line, word] : read_tokens(p)) {
      try {
        prof ? lex.add_profanity(word) : lex.add_word(word);
      } catch (const ConfigError& e) {
        throw ConfigError(p.string() + ":" + std::to_string(line) + ": " + e.what());
      }
    }
  };
  fill(english, false);
  fill(profanity, true);
  return lex;
}

SubstitutionTable SubstitutionTable::defaults() {
  SubstitutionTable t;
  t.set('4', "a");
  t.set('3', "e");
  t.set('0', "o");
  t.set('1', "il");
  t.set('$', "s");
  t.set('@', "a");
  t.set('5', "s");
  t.set('7', "t");
  return t;
}

void SubstitutionTable::set(char from, std::string letters) {
  if (letters.empty()) throw ConfigError(std::string("no replacement for '") + from + "'");
  for (char c : letters)
    if (c < 'a' || c > 'z') throw ConfigError(std::string("replacement for '") + from + "' must be lowercase letters");
  table_[from] = std::move(letters);
}

std::string_view SubstitutionTable::replacements(char c) const {
  auto it = table_.find(c);
  return it == table_.end() ? std::string_view{} : std::string_view(it->second);
}

SubstitutionTable SubstitutionTable::parse(std::string_view text) {
  SubstitutionTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.size() < 3 || line[1] != ' ') throw ParseError("expected '<char> <letters>'", n);
    try {
      t.set(line[0], line.substr(2));
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), n);
    }
  }
  return t;
}

SubstitutionTable SubstitutionTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void CanonMap::add(std::string_view from, std::string_view to) {
  const std::string key = lower(from);
  if (key.empty() || to.empty()) throw ConfigError("empty canon entry");
  if (lower(to) != to) throw ConfigError("canon value '" + std::string(to) + "' is not lowercase");
  for (const auto& [k, v] : map_)
    if (k == lower(to) || v == key) throw ConfigError("canon entry '" + key + "' chains into another entry");
  if (key == to) throw ConfigError("canon entry '" + key + "' maps to itself");
  map_[key] = std::string(to);
}

const std::string* CanonMap::find(std::string_view token) const {
  auto it = map_.find(lower(token));
  return it == map_.end() ? nullptr : &it->second;
}

CanonMap CanonMap::load(const std::filesystem::path& path) {
  CanonMap m;
  for (const auto& rec : csv::read_file(path, {"from", "to"})) {
    try {
      m.add(rec.fields[0], rec.fields[1]);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), rec.line);
    }
  }
  return m;
}

SkipList default_skip_list() { return {"yt"}; }

SkipList load_skip_list(const std::filesystem::path& path) {
  SkipList s;
  for (const auto& [line, word] : read_tokens(path)) s.insert(lower(word));
  return s;
}

Resources load_resources(const std::filesystem::path& dir) {
  Resources r;
  r.lexicon = Lexicon::load(dir / "english.txt", dir / "profanity.txt");
  r.table = SubstitutionTable::load(dir / "leet.txt");
  r.canon = CanonMap::load(dir / "canon.csv");
  r.skip = load_skip_list(dir / "skip.txt");
  return r;
}

// ---------------------------------------------------------------------------

std::string strip_quotes(std::string_view text) {
  struct Tag {
    std::string_view open, close;
  };
  static constexpr Tag kTags[] = {{"[quote", "[/quote]"}, {"<blockquote", "</blockquote>"}};
  std::string out;
  std::vector<const Tag*> stack;
  std::size_t i = 0;
  while (i < text.size()) {
    const Tag* matched = nullptr;
    bool opening = false;
    for (const Tag& t : kTags) {
      if (starts_with_ci(text, i, t.close)) {
        matched = &t;
        break;
      }
      if (starts_with_ci(text, i, t.open)) {
        const std::size_t after = i + t.open.size();
        // "[quote]", "[quote=...]", "[quote ...]" but not "[quotes]".
        const char next = after < text.size() ? text[after] : '\0';
        const char end = t.open[0] == '[' ? ']' : '>';
        if (next == end || next == '=' || next == ' ') {
          matched = &t;
          opening = true;
          break;
        }
      }
    }
    if (!matched) {
      if (stack.empty()) out.push_back(text[i]);
      ++i;
      continue;
    }
    if (opening) {
      const char end = matched->open[0] == '[' ? ']' : '>';
      const std::size_t close = text.find(end, i);
      stack.push_back(matched);
      i = close == std::string_view::npos ? text.size() : close + 1;
    } else {
      if (!stack.empty()) stack.pop_back();
      i += matched->close.size();
    }
  }
  if (std::all_of(out.begin(), out.end(), is_space)) return {};
  return out;
}

std::string desymbol(std::string_view word, const Lexicon& lexicon) {
  std::string residue;
  bool removed = false;
  for (char c : word) {
    if (is_symbol(c)) {
      removed = true;
    } else {
      residue.push_back(c);
    }
  }
  if (!removed || residue.empty()) return std::string(word);
  residue = lower(residue);
  return lexicon.contains(residue) ? residue : std::string(word);
}

std::string deleet(std::string_view word, const SubstitutionTable& table, const Lexicon& lexicon) {
  const std::string base = lower(word);
  if (std::none_of(base.begin(), base.end(), is_alpha) || lexicon.contains(base)) return std::string(word);
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!table.replacements(base[i]).empty()) slots.push_back(i);
  if (slots.empty() || slots.size() > kMaxSubstitutable) return std::string(word);

  // Odometer over (keep, replacement...) per slot.
  std::vector<std::size_t> digit(slots.size(), 0);
  std::string candidate = base;
  bool found = false;
  std::string best;
  bool best_prof = false;
  int best_subs = 0;
  for (;;) {
    int subs = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const char orig = base[slots[s]];
      candidate[slots[s]] = digit[s] == 0 ? orig : table.replacements(orig)[digit[s] - 1];
      subs += digit[s] != 0;
    }
    if (subs > 0 && lexicon.contains(candidate)) {
      const bool prof = lexicon.is_profanity(candidate);
      if (!found || std::make_tuple(!prof, subs, candidate) < std::make_tuple(!best_prof, best_subs, best)) {
        found = true;
        best = candidate;
        best_prof = prof;
        best_subs = subs;
      }
    }
    std::size_t s = 0;
    for (; s < slots.size(); ++s) {
      if (++digit[s] <= table.replacements(base[slots[s]]).size()) break;
      digit[s] = 0;
    }
    if (s == slots.size()) break;
  }
  return found ? best : std::string(word);
}

namespace {

std::string normalize_token(std::string_view token, const Resources& r) {
  std::size_t lo = 0, hi = token.size();
  while (lo < hi && is_edge_punct(token[lo])) ++lo;
  while (hi > lo && is_edge_punct(token[hi - 1])) --hi;
  const std::string_view core = token.substr(lo, hi - lo);
  if (core.empty() || r.skip.count(lower(core))) return std::string(token);
  std::string out;
  if (const std::string* canon = r.canon.find(core)) {
    out = *canon;
  } else {
    out = desymbol(core, r.lexicon);
    if (out == core) out = deleet(core, r.table, r.lexicon);
  }
  return std::string(token.substr(0, lo)) + out + std::string(token.substr(hi));
}

}  // namespace

std::string normalize(std::string_view text, const Resources& resources) {
  const std::string stripped = strip_quotes(text);
  std::string out;
  out.reserve(stripped.size());
  std::size_t i = 0;
  while (i < stripped.size()) {
    if (is_space(stripped[i])) {
      out.push_back(stripped[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < stripped.size() && !is_space(stripped[j])) ++j;
    out += normalize_token(std::string_view(stripped).substr(i, j - i), resources);
    i = j;
  }
  return out;
}

}  // namespace pseudaudit::textnorm
