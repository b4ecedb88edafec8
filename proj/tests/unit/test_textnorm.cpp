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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "pseudaudit/csv.hpp"
#include "pseudaudit/errors.hpp"
#include "pseudaudit/textnorm.hpp"

namespace pseudaudit::textnorm {
namespace {

const Resources& res() {
  static const Resources r = load_resources(std::filesystem::path(PSEUDAUDIT_DATA_DIR) / "lexicon");
  return r;
}

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

TEST(Textnorm, PrintedExamples) {
  EXPECT_EQ(normalize("d4mn j3ws", res()), "damn jews");
  EXPECT_EQ(desymbol("fa//g//g//ot", res().lexicon), "faggot");
  EXPECT_TRUE(res().lexicon.is_profanity("faggot"));
  EXPECT_EQ(normalize("a$$h01e", res()), "asshole");
  EXPECT_EQ(normalize("yt", res()), "yt");
  EXPECT_EQ(normalize("to FIEK and RAEP you", res()), "to fuck and rape you");
}

TEST(Desymbol, OnlyWhenResidueIsAWord) {
  EXPECT_EQ(desymbol("a//b//c//x", res().lexicon), "a//b//c//x");
  EXPECT_EQ(desymbol("economics", res().lexicon), "economics");
  EXPECT_EQ(desymbol("--", res().lexicon), "--");
  EXPECT_EQ(desymbol("d.e.a.n", res().lexicon), "dean");
  // Apostrophes are part of the word.
  EXPECT_EQ(desymbol("it's", res().lexicon), "it's");
}

TEST(Deleet, SelectionRules) {
  const auto& t = res().table;
  const auto& lex = res().lexicon;
  EXPECT_EQ(deleet("d4mn", t, lex), "damn");
  EXPECT_EQ(deleet("j3ws", t, lex), "jews");
  EXPECT_EQ(deleet("economics", t, lex), "economics");
  EXPECT_EQ(deleet("1000", t, lex), "1000");
  EXPECT_EQ(deleet("D4MN", t, lex), "damn");

  Lexicon small;
  small.add_word("bill");
  small.add_word("bili");
  small.add_profanity("bial");
  SubstitutionTable st = SubstitutionTable::defaults();
  // Profanity beats fewer substitutions.
  EXPECT_EQ(deleet("b14l", st, small), "bial");
  // Fewer substitutions, then lexicographic.
  Lexicon plain;
  plain.add_word("bill");
  plain.add_word("bili");
  plain.add_word("bl1l");
  EXPECT_EQ(deleet("b1l1", st, plain), "bili");
  // Combinatorial guard.
  Lexicon big;
  big.add_word("aaaaaaaaa");
  EXPECT_EQ(deleet("a444444444", st, big), "a444444444");
  big.add_word("aaaaaaaa");
  EXPECT_EQ(deleet("a4444444", st, big), "aaaaaaaa");
}

TEST(StripQuotes, Forms) {
  EXPECT_EQ(strip_quotes("[quote]all of it[/quote]"), "");
  EXPECT_EQ(strip_quotes("[quote=x]all[/quote]\n"), "");
  EXPECT_EQ(strip_quotes("nothing quoted"), "nothing quoted");
  EXPECT_EQ(strip_quotes("a [quote]b [quote]c[/quote] d[/quote]e"), "a e");
  EXPECT_EQ(strip_quotes("<blockquote>x</blockquote>y"), "y");
  EXPECT_EQ(strip_quotes("keep [quote]drop"), "keep ");
  EXPECT_EQ(strip_quotes("[/quote]tail"), "tail");
  EXPECT_EQ(strip_quotes("[quotes] stay"), "[quotes] stay");
  EXPECT_EQ(strip_quotes("[QuOtE]x[/QUOTE]z"), "z");
}

TEST(Resources, Validation) {
  Lexicon lex;
  EXPECT_THROW(lex.add_word("Upper"), ConfigError);
  EXPECT_THROW(lex.add_word("two words"), ConfigError);
  SubstitutionTable t;
  EXPECT_THROW(t.set('4', "A"), ConfigError);
  EXPECT_THROW(SubstitutionTable::parse("4a\n"), ParseError);
  EXPECT_EQ(SubstitutionTable::parse("# c\n9 g\n").replacements('9'), "g");
  CanonMap c;
  c.add("F**K", "fuck");
  EXPECT_EQ(*c.find("f**K"), "fuck");
  EXPECT_EQ(c.find("fuck"), nullptr);
  EXPECT_THROW(c.add("fuck", "frack"), ConfigError);
  EXPECT_THROW(c.add("x", "Y"), ConfigError);
}

TEST(Resources, ShippedTablesAreConsistent) {
  const auto& r = res();
  EXPECT_GT(r.lexicon.size(), 500u);
  EXPECT_EQ(r.skip.count("yt"), 1u);
  for (char c : std::string("4301$@57")) EXPECT_FALSE(r.table.replacements(c).empty()) << c;
  // Canon outputs are made of lexicon words.
  for (const char* from : {"f**k", "secks", "gtfo", "raep", "fiek"}) {
    const std::string* to = r.canon.find(from);
    ASSERT_NE(to, nullptr) << from;
    for (const std::string& w : tokens(*to)) EXPECT_TRUE(r.lexicon.contains(w)) << w;
  }
}

class CorpusFixture : public ::testing::Test {
 protected:
  static std::vector<std::string> posts() {
    std::vector<std::string> out;
    for (const auto& rec :
         csv::read_file(std::filesystem::path(PSEUDAUDIT_TEST_DATA_DIR) / "textnorm" / "corpus.csv", {"post_id", "text"}))
      out.push_back(rec.fields[1]);
    return out;
  }
};

TEST_F(CorpusFixture, Idempotent) {
  const auto all = posts();
  ASSERT_GE(all.size(), 25u);
  for (const std::string& p : all) {
    const std::string once = normalize(p, res());
    EXPECT_EQ(normalize(once, res()), once) << p;
  }
}

TEST_F(CorpusFixture, NoInventedWordsAndNoSplitting) {
  for (const std::string& p : posts()) {
    const auto in = tokens(strip_quotes(p));
    const std::string out_text = normalize(p, res());
    const auto out = tokens(out_text);
    if (in.size() != out.size()) {
      // Only a multi-word canon value may add tokens.
      bool phrase = false;
      for (const auto& t : in)
        if (const std::string* v = res().canon.find(t); v && v->find(' ') != std::string::npos) phrase = true;
      EXPECT_TRUE(phrase) << p;
      continue;
    }
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (in[i] == out[i]) continue;
      std::string core = out[i];
      core.erase(std::remove_if(core.begin(), core.end(),
                                [](char c) { return std::string_view(".,!?;:\"()[]{}").find(c) != std::string_view::npos; }),
                 core.end());
      EXPECT_TRUE(res().lexicon.contains(core)) << in[i] << " -> " << out[i];
    }
  }
}

TEST_F(CorpusFixture, SelectedOutputs) {
  const auto all = posts();
  EXPECT_EQ(normalize(all[0], res()), "those damn jews had no morals either");
  EXPECT_EQ(normalize(all[6], res()), "\nagreed with this");
  EXPECT_EQ(normalize(all[7], res()), "");
  EXPECT_EQ(normalize(all[8], res()), "what I think: the dean is a bitch");
  EXPECT_EQ(normalize(all[10], res()), "get the fuck out of this forum");
  EXPECT_EQ(normalize(all[12], res()), "fuck this, seriously.");
  EXPECT_EQ(normalize(all[16], res()), "shut the fuck up and publish, (damn) kids");
  EXPECT_EQ(normalize(all[18], res()), "I got 1000 applications and 0 interviews");
  EXPECT_EQ(normalize(all[20], res()), "Economics is a dismal science");
}

}  // namespace
}  // namespace pseudaudit::textnorm
