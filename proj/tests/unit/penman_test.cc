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

#include "graphlin/penman.h"

#include <regex>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "graphlin/corpus.h"
#include "graphlin/rng.h"
#include "random_graph.h"

namespace graphlin {
namespace {

using testing::kFilmCanonical;
using testing::kFilmRandomized;
using testing::kFilmReconfigured;

TEST(ParsePenmanTest, FilmCanonicalShape) {
  LinearTree t = ParsePenman(kFilmCanonical);
  EXPECT_EQ(t.root().variable, "a");
  EXPECT_EQ(t.root().concept_name, "and");
  ASSERT_FALSE(t.root().branches.empty());
  EXPECT_EQ(t.root().branches[0].role, ":op1");
  EXPECT_EQ(t.nodes().size(), 7u);
}

TEST(ParsePenmanTest, SingleNode) {
  LinearTree t = ParsePenman("(w / want-01)");
  ASSERT_EQ(t.nodes().size(), 1u);
  EXPECT_TRUE(t.root().branches.empty());
}

TEST(ParsePenmanTest, DanglingReference) {
  try {
    ParsePenman("(a / and :op1 b)");
    FAIL();
  } catch (const PenmanError& e) {
    EXPECT_EQ(e.kind(), PenmanError::Kind::kDanglingReference);
  }
}

TEST(ParsePenmanTest, DuplicateDefinition) {
  try {
    ParsePenman("(a / and :op1 (b / boy) :op2 (b / girl))");
    FAIL();
  } catch (const PenmanError& e) {
    EXPECT_EQ(e.kind(), PenmanError::Kind::kDuplicateDefinition);
  }
}

TEST(ParsePenmanTest, SyntaxErrorsCarryPosition) {
  try {
    ParsePenman("(a / and\n  :op1 (b boy))");
    FAIL();
  } catch (const PenmanError& e) {
    EXPECT_EQ(e.kind(), PenmanError::Kind::kSyntax);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 11u);
    EXPECT_NE(std::string(e.what()).find("expected '/'"), std::string::npos);
  }
  for (const char* bad : {"", "(", "(a / )", "(a / b", "(a / b :op1)", "(a / b) x",
                          "(a / b :op1 \"open)", "a / b"}) {
    EXPECT_THROW(ParsePenman(bad), PenmanError) << bad;
  }
}

TEST(ParsePenmanTest, ConstantsAndStrings) {
  LinearTree t = ParsePenman(
      "(p / person :name (n / name :op1 \"New  York\" :op2 \"a\\\"b\") :polarity - "
      ":quant 3.5 :mode imperative)");
  const auto& person = t.root();
  ASSERT_EQ(person.branches.size(), 4u);
  EXPECT_EQ(person.branches[1].kind, Branch::Kind::kConstant);
  EXPECT_EQ(person.branches[1].value, "-");
  EXPECT_EQ(person.branches[2].value, "3.5");
  EXPECT_EQ(person.branches[3].value, "imperative");
  const auto& name = t.nodes()[person.branches[0].node];
  EXPECT_EQ(name.branches[0].value, "\"New  York\"");
  EXPECT_EQ(name.branches[1].value, "\"a\\\"b\"");
}

TEST(ParsePenmanTest, ForwardReferences) {
  LinearTree t = ParsePenman("(a / and :op1 b :op2 (b / boy))");
  EXPECT_EQ(t.root().branches[0].kind, Branch::Kind::kReference);
  EXPECT_EQ(ReentrancyCount(t), 1u);
}

TEST(ParsePenmanTest, AlignmentsStripped) {
  ParseStats stats;
  LinearTree t = ParsePenman("(w / want-01~e.2 :ARG0 (b / boy~e.1) :polarity -~e.3,4)", &stats);
  EXPECT_EQ(stats.alignments_stripped, 3u);
  EXPECT_EQ(t, ParsePenman("(w / want-01 :ARG0 (b / boy) :polarity -)"));
}

TEST(TreeToGraphTest, UndoesSurfaceInversion) {
  AmrGraph g = TreeToGraph(ParsePenman(kFilmCanonical));
  bool found = false;
  for (const Triple& t : g.triples()) {
    found |= t == Triple::Relation("r", ":ARG2", "d");
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(g.top(), "a");
}

TEST(TreeToGraphTest, FilmLinearizationsAgree) {
  AmrGraph a = TreeToGraph(ParsePenman(kFilmCanonical));
  AmrGraph b = TreeToGraph(ParsePenman(kFilmReconfigured));
  AmrGraph c = TreeToGraph(ParsePenman(kFilmRandomized));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(SameTriples(a, c));
  EXPECT_EQ(c.top(), "r");
  EXPECT_EQ(a.triples().size(), 16u);
}

TEST(TreeToGraphTest, OneNode) {
  AmrGraph g = TreeToGraph(ParsePenman("(w / want-01)"));
  ASSERT_EQ(g.triples().size(), 1u);
  EXPECT_EQ(g.triples()[0], Triple::Instance("w", "want-01"));
}

TEST(SerializeTest, Layout) {
  EXPECT_EQ(Serialize(ParsePenman("(w / want-01)")).Join(), "( w / want-01 )");
  EXPECT_EQ(Serialize(ParsePenman(kFilmCanonical)).Join().substr(0, 38),
            "( a / and :op1 ( d / dream-01 :ARG1 ( ");
}

TEST(SerializeTest, RoundTripOnRandomGraphs) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    AmrGraph g = testing::RandomGraph(rng);
    LinearTree t = testing::RandomTree(g, rng);
    LinearTree again = ParsePenman(Serialize(t).Join());
    EXPECT_EQ(again, t);
    EXPECT_EQ(TreeToGraph(again), TreeToGraph(t));
    EXPECT_EQ(ParsePenman(FormatPenman(t)), t);
  }
}

TEST(StripSenseTest, OnlyTrailingDigits) {
  const std::regex sense("-[0-9]+$");
  for (const char* c : {"dream-01", "resemble-01", "over-the-counter", "look-up-05", "and",
                        "-", "x-", "1990", "rate-entity-91", "a-b-c-1x"}) {
    EXPECT_EQ(StripSense(c), std::regex_replace(c, sense, "")) << c;
  }
}

TEST(SimplifyTest, Examples) {
  EXPECT_EQ(Simplify(TokenSeq::Split("( w / want-01 )")).Join(), "( want )");
  EXPECT_EQ(Simplify(TokenSeq::Split("( s / stupefy-01 :ARG1 ( w / we ) )")).Join(),
            "( stupefy :ARG1 ( we ) )");
  EXPECT_EQ(Simplify(Serialize(ParsePenman("(a / and :op1 (b / boy) :op2 b)"))).Join(),
            "( and :op1 ( boy ) :op2 boy )");
}

TEST(SimplifyTest, IdempotentAndBoundedShrink) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    AmrGraph g = testing::RandomGraph(rng);
    TokenSeq raw = Serialize(testing::RandomTree(g, rng));
    TokenSeq once = Simplify(raw);
    EXPECT_EQ(Simplify(once), once);
    EXPECT_EQ(raw.size() - once.size(), 2 * g.variable_count());
    for (const std::string& tok : once.tokens) EXPECT_NE(tok, "/");
  }
}

TEST(CorpusTest, ReadsMetadataAndSkipsFailures) {
  std::istringstream in(
      "# AMR release header\n# ::snt-lang en\n\n"
      "# ::id one ::date 2020\n# ::snt The boy wants .\n(w / want-01\n  :ARG0 (b / boy))\n\n"
      "# ::id two\n(x / broken\n\n"
      "(n / no-id)\n");
  auto records = ReadAmrRecords(in);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].id, "one");
  EXPECT_EQ(records[0].sentence, "The boy wants .");
  EXPECT_EQ(records[0].line, 4u);
  EXPECT_EQ(records[2].id, "amr4");

  AmrCorpus corpus = ParseAmrRecords(records);
  EXPECT_EQ(corpus.examples.size(), 2u);
  ASSERT_EQ(corpus.failures.size(), 1u);
  EXPECT_EQ(corpus.failures[0].id, "two");

  LoadOptions strict;
  strict.strict = true;
  EXPECT_THROW(ParseAmrRecords(records, strict), PenmanError);
}

TEST(CorpusTest, WriteReadRoundTrip) {
  Rng rng(2);
  std::vector<AmrExample> examples;
  for (int i = 0; i < 20; ++i) {
    AmrGraph g = testing::RandomGraph(rng);
    LinearTree t = testing::RandomTree(g, rng);
    examples.push_back({"ex" + std::to_string(i), testing::PseudoSentence(t), t, g});
  }
  std::stringstream buf;
  WriteAmrCorpus(buf, examples);
  AmrCorpus back = ParseAmrRecords(ReadAmrRecords(buf));
  ASSERT_EQ(back.examples.size(), examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    EXPECT_EQ(back.examples[i].id, examples[i].id);
    EXPECT_EQ(back.examples[i].sentence, examples[i].sentence);
    EXPECT_EQ(back.examples[i].tree, examples[i].tree);
    EXPECT_EQ(back.examples[i].graph, examples[i].graph);
  }
}

}  // namespace
}  // namespace graphlin
