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

#include "graphlin/scaffold.h"

#include <map>
#include <set>
#include <string>

#include <gtest/gtest.h>
#include "json.hpp"

#include "fixtures.h"
#include "graphlin/penman.h"
#include "graphlin/relinearize.h"
#include "random_graph.h"

namespace graphlin {
namespace {

AmrExample MakeAmr(std::string id, std::string_view text, std::string sentence) {
  LinearTree tree = ParsePenman(text);
  AmrGraph graph = TreeToGraph(tree);
  return {std::move(id), std::move(sentence), std::move(tree), std::move(graph)};
}

std::vector<AmrExample> RandomCorpus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<AmrExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    AmrGraph g = testing::RandomGraph(rng);
    LinearTree t = testing::RandomTree(g, rng);
    out.push_back({"g" + std::to_string(i), testing::PseudoSentence(t), t, g});
  }
  return out;
}

AmrGraph GraphOf(const TokenSeq& raw) { return TreeToGraph(ParsePenman(raw.Join())); }

TEST(TaskKindTest, NamesRoundTrip) {
  std::set<std::string> names;
  for (TaskKind t : kAllTaskKinds) {
    names.insert(TaskKindName(t));
    EXPECT_EQ(ParseTaskKind(TaskKindName(t)), t);
  }
  EXPECT_EQ(names.size(), std::size(kAllTaskKinds));
  EXPECT_FALSE(ParseTaskKind("reorder").has_value());
}

TEST(ReorderPairTest, FilmTargetIsCanonical) {
  AmrExample film = MakeAmr("film", testing::kFilmCanonical, std::string(testing::kFilmSentence));
  Rng rng(3);
  TrainingExample ex = ReorderPair(film, LinearizationKind::kReconfigured, rng);
  EXPECT_EQ(ex.task, TaskKind::kReorderFromReconfigured);
  EXPECT_EQ(ex.target, Simplify(Serialize(film.tree)));
  EXPECT_EQ(ex.input[1], "and");
  EXPECT_THROW(ReorderPair(film, LinearizationKind::kCanonical, rng), std::invalid_argument);
}

TEST(ReorderPairTest, OneNodeInputEqualsTarget) {
  AmrExample one = MakeAmr("w", "(w / want-01)", "Want .");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (LinearizationKind mode : {LinearizationKind::kReconfigured, LinearizationKind::kRandomized}) {
      Rng rng(seed);
      TrainingExample ex = ReorderPair(one, mode, rng);
      EXPECT_EQ(ex.input, ex.target);
    }
  }
}

TEST(ReorderPairTest, InputAndTargetDescribeTheSameGraph) {
  Rng rng(8);
  for (const AmrExample& ex : RandomCorpus(500, 8)) {
    LinearizationKind mode =
        rng.Bernoulli(0.5) ? LinearizationKind::kReconfigured : LinearizationKind::kRandomized;
    Rng local(rng.Next());
    LinearTree input = Relinearize(ex.graph, &ex.tree, mode, local);
    EXPECT_TRUE(SameTriples(GraphOf(Serialize(input)), GraphOf(Serialize(ex.tree))));
  }
}

TEST(AdversarialStreamTest, CanonicalIsEpochInvariant) {
  auto corpus = RandomCorpus(30, 1);
  auto e1 = AdversarialStream(corpus, LinearizationKind::kCanonical, 1, 42);
  auto e2 = AdversarialStream(corpus, LinearizationKind::kCanonical, 2, 42);
  EXPECT_EQ(e1.examples, e2.examples);
}

TEST(AdversarialStreamTest, RandomizedChangesAcrossEpochs) {
  std::vector<AmrExample> corpus = RandomCorpus(9, 2);
  corpus.push_back(MakeAmr("film", testing::kFilmCanonical, std::string(testing::kFilmSentence)));
  auto e1 = AdversarialStream(corpus, LinearizationKind::kRandomized, 1, 42);
  auto e2 = AdversarialStream(corpus, LinearizationKind::kRandomized, 2, 42);
  ASSERT_EQ(e1.examples.size(), e2.examples.size());
  EXPECT_NE(e1.examples, e2.examples);
}

TEST(AdversarialStreamTest, EveryInputDescribesItsGraph) {
  auto corpus = RandomCorpus(100, 3);
  StreamOptions options;
  options.seed = 5;
  options.epoch = 4;
  for (LinearizationKind kind : {LinearizationKind::kReconfigured, LinearizationKind::kRandomized}) {
    for (const AmrExample& ex : corpus) {
      Rng rng(DeriveSeed(options.seed, ex.id, options.epoch, 1));
      LinearTree t = Relinearize(ex.graph, &ex.tree, kind, rng);
      EXPECT_TRUE(SameTriples(GraphOf(Serialize(t)), ex.graph));
      Rng again(DeriveSeed(options.seed, ex.id, options.epoch, 1));
      EXPECT_EQ(Simplify(Serialize(t)), MakeExample(ex, TaskKind::kGenerateText, kind, again).input);
    }
  }
}

TEST(MakeExampleTest, GenerateAndReorderTarget) {
  AmrExample film = MakeAmr("film", testing::kFilmCanonical, std::string(testing::kFilmSentence));
  Rng a(9), b(9);
  TrainingExample joint =
      MakeExample(film, TaskKind::kGenerateAndReorder, LinearizationKind::kCanonical, a, 0.15);
  TrainingExample reorder = ReorderPair(film, LinearizationKind::kReconfigured, b);
  EXPECT_EQ(joint.task, TaskKind::kGenerateAndReorder);
  EXPECT_EQ(joint.input, reorder.input);
  TokenSeq expected = Simplify(Serialize(film.tree));
  expected.tokens.emplace_back("<sep>");
  for (const std::string& w : TokenSeq::Split(std::string(testing::kFilmSentence)).tokens) {
    expected.tokens.push_back(w);
  }
  EXPECT_EQ(joint.target, expected);
  AmrExample bare = MakeAmr("bare", "(w / want-01)", "");
  EXPECT_THROW(MakeExample(bare, TaskKind::kGenerateAndReorder, LinearizationKind::kCanonical, a,
                           0.15),
               std::invalid_argument);
}

TEST(BuildTaskStreamTest, IndependentOfJobs) {
  auto corpus = RandomCorpus(64, 4);
  for (TaskKind task : kAllTaskKinds) {
    StreamOptions options;
    options.seed = 11;
    options.strategy = LinearizationKind::kRandomized;
    TaskStream serial = BuildTaskStream(corpus, task, options);
    options.jobs = 4;
    TaskStream parallel = BuildTaskStream(corpus, task, options);
    EXPECT_EQ(serial.examples, parallel.examples) << TaskKindName(task);
    EXPECT_EQ(serial.examples.size() + serial.skipped, corpus.size());
  }
}

TEST(BuildTaskStreamTest, MaskTasksTargetTheirLinearization) {
  AmrExample film = MakeAmr("film", testing::kFilmCanonical, std::string(testing::kFilmSentence));
  StreamOptions options;
  TaskStream s = BuildTaskStream({film}, TaskKind::kMaskNodes, options);
  ASSERT_EQ(s.examples.size(), 1u);
  EXPECT_EQ(s.examples[0].target, Simplify(Serialize(film.tree)));
  TaskStream r = BuildTaskStream({film}, TaskKind::kMaskNodesReconfigured, options);
  EXPECT_TRUE(SameTriples(TreeToGraph(ParsePenman(Serialize(film.tree).Join())), film.graph));
  EXPECT_EQ(r.examples[0].target.size(), r.examples[0].input.size());
  TaskStream mlm = BuildTaskStream({film}, TaskKind::kSentenceMlm, options);
  EXPECT_EQ(mlm.examples[0].target.Join(), testing::kFilmSentence);
}

TEST(BuildTaskStreamTest, MissingSentenceIsSkipped) {
  AmrExample bare = MakeAmr("bare", "(w / want-01)", "");
  TaskStream s = BuildTaskStream({bare}, TaskKind::kGenerateText, {});
  EXPECT_EQ(s.examples.size(), 0u);
  EXPECT_EQ(s.skipped, 1u);
}

TEST(BuildRdfTaskStreamTest, OneExamplePerReference) {
  RdfEntry e;
  e.id = "ned";
  e.triples = {{"Ned", "fatherOf", "Rod"}, {"Ned", "fatherOf", "Todd"}};
  e.references = {"Ned is the father of Rod and Todd .", "Rod and Todd are sons of Ned ."};
  TaskStream s = BuildRdfTaskStream({e}, TaskKind::kGenerateText, {});
  ASSERT_EQ(s.examples.size(), 2u);
  EXPECT_EQ(s.examples[1].id, "ned#2");
  EXPECT_EQ(s.examples[0].input, LinearizeRdf(e));
  StreamOptions reconf;
  reconf.strategy = LinearizationKind::kReconfigured;
  EXPECT_THROW(BuildRdfTaskStream({e}, TaskKind::kGenerateText, reconf), std::invalid_argument);
  EXPECT_THROW(BuildRdfTaskStream({e}, TaskKind::kMaskAll, {}), std::invalid_argument);
}

std::map<TaskKind, TaskStream> Streams(const std::vector<AmrExample>& corpus) {
  std::map<TaskKind, TaskStream> streams;
  for (TaskKind t : kAllTaskKinds) streams[t] = BuildTaskStream(corpus, t, {});
  return streams;
}

TEST(MixtureBatchesTest, ScaffoldFractionAndHomogeneity) {
  auto streams = Streams(RandomCorpus(40, 5));
  MixtureConfig config;
  config.enabled_scaffolds = {TaskKind::kMaskNodes, TaskKind::kReorderFromRandomized};
  Rng rng(12);
  auto batches = MixtureBatches(streams, config, 10000, rng);
  std::size_t scaffold = 0;
  for (const Batch& b : batches) {
    ASSERT_EQ(b.examples.size(), 6u);
    scaffold += b.task != TaskKind::kGenerateText;
    for (const TrainingExample& ex : b.examples) ASSERT_EQ(ex.task, b.task);
  }
  const double fraction = static_cast<double>(scaffold) / 10000.0;
  EXPECT_GE(fraction, 0.48);
  EXPECT_LE(fraction, 0.52);
}

TEST(MixtureBatchesTest, ExtremeProbabilities) {
  auto streams = Streams(RandomCorpus(10, 6));
  MixtureConfig config;
  config.scaffold_probability = 0.0;
  Rng rng(1);
  for (const Batch& b : MixtureBatches(streams, config, 200, rng)) {
    EXPECT_EQ(b.task, TaskKind::kGenerateText);
  }
  config.scaffold_probability = 1.0;
  config.enabled_scaffolds = {TaskKind::kSentenceMlm};
  for (const Batch& b : MixtureBatches(streams, config, 200, rng)) {
    EXPECT_EQ(b.task, TaskKind::kSentenceMlm);
  }
  config.enabled_scaffolds.clear();
  EXPECT_THROW(MixtureBatches(streams, config, 1, rng), NoScaffolds);
}

TEST(MixtureBatchesTest, StreamsAreConsumedInOrderAndWrap) {
  auto streams = Streams(RandomCorpus(4, 7));
  MixtureConfig config;
  config.scaffold_probability = 0.0;
  config.batch_size = 3;
  Rng rng(1);
  auto batches = MixtureBatches(streams, config, 2, rng);
  const auto& gen = streams[TaskKind::kGenerateText].examples;
  EXPECT_EQ(batches[0].examples[0], gen[0]);
  EXPECT_EQ(batches[1].examples[0], gen[3]);
  EXPECT_EQ(batches[1].examples[1], gen[0]);
}

TEST(SelectSubsetTest, ReproducibleAndDistinct) {
  auto a = SelectSubset(1000, 500, 9);
  EXPECT_EQ(a, SelectSubset(1000, 500, 9));
  EXPECT_NE(a, SelectSubset(1000, 500, 10));
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 500u);
  EXPECT_EQ(SelectSubset(10, 50, 1).size(), 10u);
}

TEST(ToJsonLineTest, FieldOrderAndExtras) {
  TrainingExample ex{"x1", TaskKind::kMaskComponents, TokenSeq::Split("( stupefy <M> ( we <M> )"),
                     TokenSeq::Split("( stupefy :ARG1 ( we ) )")};
  const std::string line = ToJsonLine(ex, {{"batch", 7}});
  EXPECT_EQ(line,
            R"json({"id":"x1","task":"mask-components","input":"( stupefy <M> ( we <M> )",)json"
            R"json("target":"( stupefy :ARG1 ( we ) )","batch":7})json");
  EXPECT_EQ(nlohmann::json::parse(line).at("task"), "mask-components");
}

}  // namespace
}  // namespace graphlin
