// Copyright 2026 The Graphlin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphlin/bleu.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "graphlin/rng.h"

namespace graphlin {
namespace {

// The four mteval-v13a substitutions, applied with std::regex.
std::vector<std::string> RegexTokenize13a(const std::string& line) {
  static const std::regex kSymbols(R"(([{-~\[-\x60 -&(-+:-@/]))");
  static const std::regex kPeriodAfter(R"(([^0-9])([.,]))");
  static const std::regex kPeriodBefore(R"(([.,])([^0-9]))");
  static const std::regex kDash(R"(([0-9])(-))");
  std::string s = " " + line + " ";
  s = std::regex_replace(s, kSymbols, " $1 ");
  s = std::regex_replace(s, kPeriodAfter, "$1 $2 ");
  s = std::regex_replace(s, kPeriodBefore, " $1 $2");
  s = std::regex_replace(s, kDash, "$1 $2 ");
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

TEST(Tokenize13aTest, KnownCases) {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
    return s;
  };
  EXPECT_EQ(join(Tokenize13a("Hello, world!")), "Hello , world !");
  EXPECT_EQ(join(Tokenize13a("It costs $3.50.")), "It costs $ 3.50 .");
  EXPECT_EQ(join(Tokenize13a("1,000 people")), "1,000 people");
  EXPECT_EQ(join(Tokenize13a("state-of-the-art")), "state-of-the-art");
  EXPECT_EQ(join(Tokenize13a("pages 10-20")), "pages 10 - 20");
  EXPECT_EQ(join(Tokenize13a("a &amp; b &quot;c&quot;")), "a & b \" c \"");
  EXPECT_EQ(join(Tokenize13a("don't (really)")), "don't ( really )");
}

TEST(Tokenize13aTest, MatchesRegexOracle) {
  const std::string alphabet = "ab9 .,-$!(\"'/:?x0";
  Rng rng(13);
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    const std::size_t len = rng.UniformIndex(16);
    for (std::size_t k = 0; k < len; ++k) s += alphabet[rng.UniformIndex(alphabet.size())];
    ASSERT_EQ(Tokenize13a(s), RegexTokenize13a(s)) << "'" << s << "'";
  }
}

TEST(CorpusBleuTest, IdenticalIsHundred) {
  std::vector<std::string> hyps = {"The film is a dream .", "Ned is Rod 's father ."};
  BleuReport r = CorpusBleu(hyps, {{hyps[0]}, {hyps[1]}});
  EXPECT_DOUBLE_EQ(r.score, 100.0);
  EXPECT_DOUBLE_EQ(r.brevity_penalty, 1.0);
}

TEST(CorpusBleuTest, DisjointIsZero) {
  BleuReport r = CorpusBleu({"alpha beta gamma delta"}, {{"one two three four five"}});
  EXPECT_EQ(r.score, 0.0);
}

TEST(CorpusBleuTest, HandDerivedMicroCorpus) {
  // Counts per order, summed over the three segments:
  //   1-grams 5+4+2 of 6+4+2, 2-grams 3+3+1 of 5+3+1,
  //   3-grams 1+2+0 of 4+2+0, 4-grams 0+1+0 of 3+1+0.
  // Hypothesis length 12; closest reference lengths 6+5+3 = 14.
  BleuReport r = CorpusBleu(
      {"the cat sat on the mat", "a dog runs fast", "hello world"},
      {{"the cat is on the mat"}, {"a dog runs fast ."}, {"hello there world", "hello world !"}});
  const double expected =
      100.0 * std::exp(1.0 - 14.0 / 12.0) *
      std::exp(0.25 * (std::log(11.0 / 12.0) + std::log(7.0 / 9.0) + std::log(3.0 / 6.0) +
                       std::log(1.0 / 4.0)));
  EXPECT_NEAR(r.score, expected, 1e-6);
  EXPECT_NEAR(r.precisions[0], 100.0 * 11.0 / 12.0, 1e-9);
  EXPECT_NEAR(r.precisions[3], 25.0, 1e-9);
  EXPECT_EQ(r.hypothesis_length, 12u);
  EXPECT_EQ(r.reference_length, 14u);
  EXPECT_NEAR(r.brevity_penalty, std::exp(-1.0 / 6.0), 1e-12);
}

TEST(CorpusBleuTest, Errors) {
  EXPECT_THROW(CorpusBleu({}, {}), BleuError);
  EXPECT_THROW(CorpusBleu({"a"}, {}), BleuError);
  EXPECT_THROW(CorpusBleu({"a"}, {{}}), BleuError);
}

TEST(CorpusBleuTest, ClosestReferencePrefersShorterOnTies) {
  // Hypothesis of 4 tokens, references of 3 and 5: the tie resolves to 3.
  BleuStats s = SegmentStats({"a", "b", "c", "d"}, {{"a", "b", "c"}, {"a", "b", "c", "d", "e"}});
  EXPECT_EQ(s.reference_length, 3u);
}

TEST(CorpusBleuTest, ClipsByMaxCountAcrossReferences) {
  BleuStats s = SegmentStats({"the", "the", "the", "the"}, {{"the", "cat"}, {"the", "the", "x"}});
  EXPECT_EQ(s.matches[0], 2u);
  EXPECT_EQ(s.totals[0], 4u);
}

// Straightforward n-gram counting over whitespace tokens.
BleuStats NaiveStats(const std::vector<std::string>& hyp,
                     const std::vector<std::vector<std::string>>& refs) {
  BleuStats s;
  s.hypothesis_length = hyp.size();
  std::size_t best = refs[0].size();
  for (const auto& r : refs) {
    const long d = std::labs(static_cast<long>(r.size()) - static_cast<long>(hyp.size()));
    const long bd = std::labs(static_cast<long>(best) - static_cast<long>(hyp.size()));
    if (d < bd || (d == bd && r.size() < best)) best = r.size();
  }
  s.reference_length = best;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::map<std::vector<std::string>, std::size_t> h, maxref;
    for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
      ++h[{hyp.begin() + i, hyp.begin() + i + n}];
    }
    for (const auto& r : refs) {
      std::map<std::vector<std::string>, std::size_t> c;
      for (std::size_t i = 0; i + n <= r.size(); ++i) ++c[{r.begin() + i, r.begin() + i + n}];
      for (const auto& [g, k] : c) maxref[g] = std::max(maxref[g], k);
    }
    for (const auto& [g, k] : h) {
      s.totals[n - 1] += k;
      s.matches[n - 1] += std::min(k, maxref[g]);
    }
  }
  return s;
}

TEST(CorpusBleuTest, AgreesWithNaiveCountingAndIsPermutationInvariant) {
  Rng rng(4);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e"};
  auto sentence = [&](std::size_t len) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(words[rng.UniformIndex(words.size())]);
    return out;
  };
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
    return s;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> hyps;
    std::vector<std::vector<std::string>> refs;
    BleuStats total;
    for (int seg = 0; seg < 8; ++seg) {
      auto h = sentence(3 + rng.UniformIndex(8));
      std::vector<std::vector<std::string>> rs;
      std::vector<std::string> rtext;
      for (std::size_t k = 0; k < 1 + rng.UniformIndex(3); ++k) {
        rs.push_back(sentence(3 + rng.UniformIndex(8)));
        rtext.push_back(join(rs.back()));
      }
      total += NaiveStats(h, rs);
      hyps.push_back(join(h));
      refs.push_back(rtext);
    }
    BleuReport r = CorpusBleu(hyps, refs);
    EXPECT_NEAR(r.score, ComputeBleu(total, BleuSmoothing::kNone).score, 1e-9);
    std::vector<std::size_t> perm(hyps.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.Shuffle(perm);
    std::vector<std::string> ph;
    std::vector<std::vector<std::string>> pr;
    for (std::size_t i : perm) {
      ph.push_back(hyps[i]);
      pr.push_back(refs[i]);
    }
    EXPECT_NEAR(CorpusBleu(ph, pr).score, r.score, 1e-9);
  }
}

TEST(CorpusBleuTest, SignatureDocumentsSettings) {
  BleuReport r = CorpusBleu({"a b"}, {{"a b", "a c"}});
  EXPECT_EQ(r.signature, "nrefs:2|case:mixed|eff:no|tok:13a|smooth:none|version:graphlin");
}

TEST(SentenceBleuTest, IdenticalAndDisjoint) {
  EXPECT_NEAR(SentenceBleu("The film is a dream .", {"The film is a dream ."}), 100.0, 1e-9);
  const double disjoint = SentenceBleu("alpha beta gamma", {"one two three"});
  EXPECT_GT(disjoint, 0.0);
  EXPECT_LT(disjoint, 100.0);
  EXPECT_NEAR(disjoint, 100.0 * std::pow(1.0 / 4.0 * 1.0 / 3.0 * 1.0 / 2.0 * 1.0, 0.25), 1e-9);
}

TEST(SentenceBleuTest, MonotoneInMatchesByEnumeration) {
  // All 5-token hypotheses over {a, b, c} against a fixed reference. When
  // one hypothesis matches at least as many n-grams of every order as
  // another (equal lengths), its score is not lower.
  const std::vector<std::string> ref = {"a", "b", "c", "a", "b"};
  std::vector<std::pair<BleuStats, double>> all;
  for (int code = 0; code < 243; ++code) {
    std::vector<std::string> hyp;
    std::string text;
    for (int k = 0, c = code; k < 5; ++k, c /= 3) {
      hyp.push_back(std::string(1, static_cast<char>('a' + c % 3)));
      text += (k ? " " : "") + hyp.back();
    }
    all.push_back({SegmentStats(hyp, {ref}), SentenceBleu(text, {"a b c a b"})});
  }
  std::size_t comparisons = 0;
  for (const auto& [s1, b1] : all) {
    for (const auto& [s2, b2] : all) {
      bool dominates = true;
      for (int n = 0; n < 4; ++n) dominates &= s2.matches[n] >= s1.matches[n];
      if (!dominates) continue;
      ++comparisons;
      ASSERT_GE(b2, b1 - 1e-12);
    }
  }
  EXPECT_GT(comparisons, 243u);
  for (const auto& [s, b] : all) {
    BleuStats bumped = s;
    if (bumped.matches[1] < bumped.totals[1]) {
      ++bumped.matches[1];
      EXPECT_GT(ComputeBleu(bumped, BleuSmoothing::kAddOne).score,
                ComputeBleu(s, BleuSmoothing::kAddOne).score);
    }
  }
}

}  // namespace
}  // namespace graphlin
