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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "fixtures.h"
#include "graphlin/bleu.h"
#include "graphlin/corruption.h"
#include "graphlin/penman.h"
#include "graphlin/relinearize.h"
#include "graphlin/smatch.h"
#include "random_graph.h"

namespace graphlin {
namespace {

std::vector<AmrGraph> Graphs(std::size_t n, std::size_t max_variables) {
  testing::RandomGraphOptions options;
  options.min_variables = max_variables / 2;
  options.max_variables = max_variables;
  Rng rng(1);
  std::vector<AmrGraph> graphs;
  for (std::size_t i = 0; i < n; ++i) graphs.push_back(testing::RandomGraph(rng, options));
  return graphs;
}

void BM_ParsePenman(benchmark::State& state) {
  Rng rng(2);
  std::vector<std::string> texts;
  for (const AmrGraph& g : Graphs(64, static_cast<std::size_t>(state.range(0)))) {
    texts.push_back(FormatPenman(Reconfigure(g, rng)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ParsePenman(texts[i++ % texts.size()]));
  }
}
BENCHMARK(BM_ParsePenman)->Arg(12)->Arg(40);

void BM_Reconfigure(benchmark::State& state) {
  const std::vector<AmrGraph> graphs = Graphs(64, static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Reconfigure(graphs[i++ % graphs.size()], rng));
  }
}
BENCHMARK(BM_Reconfigure)->Arg(12)->Arg(40);

void BM_MaskComponents(benchmark::State& state) {
  const TokenSeq seq = Simplify(Serialize(ParsePenman(testing::kFilmCanonical)));
  MaskStrategy strategy;
  strategy.target = MaskTarget::kComponentsOnly;
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(Mask(seq, strategy, rng));
}
BENCHMARK(BM_MaskComponents);

void BM_Smatch(benchmark::State& state) {
  const std::vector<AmrGraph> graphs = Graphs(32, static_cast<std::size_t>(state.range(0)));
  Rng rng(5);
  std::size_t i = 0;
  for (auto _ : state) {
    const AmrGraph& a = graphs[i % graphs.size()];
    const AmrGraph& b = graphs[(i + 1) % graphs.size()];
    benchmark::DoNotOptimize(Smatch(a, b, rng, 4));
    ++i;
  }
}
BENCHMARK(BM_Smatch)->Arg(6)->Arg(20)->Arg(40);

void BM_SmatchExact(benchmark::State& state) {
  const std::vector<AmrGraph> graphs = Graphs(32, 6);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SmatchExact(graphs[i % graphs.size()], graphs[(i + 1) % graphs.size()]));
    ++i;
  }
}
BENCHMARK(BM_SmatchExact);

void BM_CorpusBleu(benchmark::State& state) {
  Rng rng(6);
  std::vector<std::string> hyps;
  std::vector<std::vector<std::string>> refs;
  for (int i = 0; i < state.range(0); ++i) {
    const AmrGraph g = testing::RandomGraph(rng);
    hyps.push_back(testing::PseudoSentence(Reconfigure(g, rng)));
    refs.push_back({testing::PseudoSentence(Reconfigure(g, rng))});
  }
  for (auto _ : state) benchmark::DoNotOptimize(CorpusBleu(hyps, refs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorpusBleu)->Arg(1000);

}  // namespace
}  // namespace graphlin

BENCHMARK_MAIN();
