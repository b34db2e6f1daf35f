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

#include "graphlin/smatch.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "graphlin/penman.h"
#include "random_graph.h"

namespace graphlin {
namespace {

AmrGraph G(std::string_view text) { return TreeToGraph(ParsePenman(text)); }

// Matched triples of one explicit mapping (left variable -> right variable),
// counted on the raw triple lists with multiset semantics. The top triple
// is (top, concept of top).
std::size_t CountMatched(const AmrGraph& left, const AmrGraph& right,
                         const std::map<std::string, std::string>& map) {
  std::multiset<Triple> pool(right.triples().begin(), right.triples().end());
  std::size_t matched = 0;
  auto image = [&](const std::string& v) -> std::string {
    auto it = map.find(v);
    return it == map.end() ? std::string() : it->second;
  };
  for (const Triple& t : left.triples()) {
    const std::string s = image(t.source);
    if (s.empty()) continue;
    Triple mapped = t;
    mapped.source = s;
    if (t.kind == TripleKind::kRelation) {
      mapped.target = image(t.target);
      if (mapped.target.empty()) continue;
    }
    auto it = pool.find(mapped);
    if (it != pool.end()) {
      pool.erase(it);
      ++matched;
    }
  }
  if (image(left.top()) == right.top() &&
      *left.ConceptOf(left.top()) == *right.ConceptOf(right.top())) {
    ++matched;
  }
  return matched;
}

// Every injective partial mapping.
std::size_t BruteForceMatched(const AmrGraph& left, const AmrGraph& right) {
  const auto lv = left.variables(), rv = right.variables();
  std::map<std::string, std::string> map;
  std::vector<char> used(rv.size(), 0);
  std::size_t best = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == lv.size()) {
      best = std::max(best, CountMatched(left, right, map));
      return;
    }
    rec(i + 1);
    for (std::size_t j = 0; j < rv.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      map[lv[i]] = rv[j];
      rec(i + 1);
      map.erase(lv[i]);
      used[j] = 0;
    }
  };
  rec(0);
  return best;
}

TEST(SmatchExactTest, BoyGirlExample) {
  SmatchResult r = SmatchExact(G("(a / and :op1 (b / boy))"), G("(x / and :op1 (y / girl))"));
  EXPECT_EQ(r.matched, 3u);
  EXPECT_EQ(r.left_total, 4u);
  EXPECT_EQ(r.right_total, 4u);
  EXPECT_DOUBLE_EQ(r.precision, 0.75);
  EXPECT_DOUBLE_EQ(r.recall, 0.75);
  EXPECT_DOUBLE_EQ(r.f_score, 0.75);
}

TEST(SmatchExactTest, OneNodeIdentity) {
  SmatchResult r = SmatchExact(G("(w / want-01)"), G("(v / want-01)"));
  EXPECT_DOUBLE_EQ(r.f_score, 1.0);
  ASSERT_EQ(r.mapping.size(), 1u);
  EXPECT_EQ(r.mapping[0], (std::pair<std::string, std::string>("w", "v")));
}

TEST(SmatchExactTest, MatchesBruteForce) {
  Rng rng(31);
  testing::RandomGraphOptions small;
  small.max_variables = 5;
  for (int trial = 0; trial < 150; ++trial) {
    AmrGraph a = testing::RandomGraph(rng, small);
    AmrGraph b = testing::RandomGraph(rng, small);
    const std::size_t truth = BruteForceMatched(a, b);
    SmatchResult r = SmatchExact(a, b);
    ASSERT_EQ(r.matched, truth);
    std::map<std::string, std::string> map(r.mapping.begin(), r.mapping.end());
    EXPECT_EQ(CountMatched(a, b, map), truth);
    EXPECT_DOUBLE_EQ(SmatchExact(b, a).f_score, r.f_score);
  }
}

TEST(SmatchExactTest, TooLarge) {
  testing::RandomGraphOptions big;
  big.min_variables = 9;
  big.max_variables = 9;
  Rng rng(1);
  AmrGraph a = testing::RandomGraph(rng, big), b = testing::RandomGraph(rng, big);
  EXPECT_THROW(SmatchExact(a, b), SmatchTooLarge);
  EXPECT_NO_THROW(SmatchExact(a, G("(w / want-01)")));
}

TEST(SmatchTest, IdentityScoresOne) {
  Rng graphs(2);
  for (int trial = 0; trial < 100; ++trial) {
    AmrGraph g = testing::RandomGraph(graphs);
    Rng rng(trial);
    EXPECT_DOUBLE_EQ(Smatch(g, g, rng).f_score, 1.0);
  }
}

TEST(SmatchTest, DisjointConceptsScoreZero) {
  Rng rng(0);
  SmatchResult r = Smatch(G("(a / alpha :ARG0 (b / beta))"), G("(x / gamma :op1 (y / delta))"), rng);
  EXPECT_EQ(r.f_score, 0.0);
}

TEST(SmatchTest, NeverExceedsExactAndUsuallyEqualsIt) {
  Rng graphs(3);
  testing::RandomGraphOptions small;
  small.max_variables = 6;
  int equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    AmrGraph a = testing::RandomGraph(graphs, small);
    AmrGraph b = testing::RandomGraph(graphs, small);
    Rng rng(trial);
    const SmatchResult hill = Smatch(a, b, rng, 4);
    const SmatchResult exact = SmatchExact(a, b);
    ASSERT_LE(hill.matched, exact.matched);
    equal += hill.matched == exact.matched;
  }
  EXPECT_GE(equal, 95);
}

TEST(SmatchTest, FilmLinearizationsAgree) {
  Rng rng(0);
  SmatchResult r =
      Smatch(G(testing::kFilmCanonical), G(testing::kFilmReconfigured), rng);
  EXPECT_DOUBLE_EQ(r.f_score, 1.0);
  SmatchResult top = SmatchExact(G(testing::kFilmCanonical), G(testing::kFilmRandomized));
  EXPECT_EQ(top.matched, 16u);
  EXPECT_EQ(top.left_total, 17u);
}

}  // namespace
}  // namespace graphlin
