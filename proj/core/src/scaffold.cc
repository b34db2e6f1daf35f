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

#include <numeric>
#include <utility>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "graphlin/corruption.h"
#include "graphlin/parallel.h"
#include "graphlin/penman.h"

namespace graphlin {
namespace {

struct MaskSpec {
  MaskTarget target;
  LinearizationKind base;
};

std::optional<MaskSpec> MaskSpecFor(TaskKind task) {
  switch (task) {
    case TaskKind::kMaskAll:
      return MaskSpec{MaskTarget::kAllGraphTokens, LinearizationKind::kCanonical};
    case TaskKind::kMaskComponents:
      return MaskSpec{MaskTarget::kComponentsOnly, LinearizationKind::kCanonical};
    case TaskKind::kMaskNodes:
      return MaskSpec{MaskTarget::kNodesOnly, LinearizationKind::kCanonical};
    case TaskKind::kMaskAllReconfigured:
      return MaskSpec{MaskTarget::kAllGraphTokens, LinearizationKind::kReconfigured};
    case TaskKind::kMaskComponentsReconfigured:
      return MaskSpec{MaskTarget::kComponentsOnly, LinearizationKind::kReconfigured};
    case TaskKind::kMaskNodesReconfigured:
      return MaskSpec{MaskTarget::kNodesOnly, LinearizationKind::kReconfigured};
    default:
      return std::nullopt;
  }
}

std::uint64_t TaskSalt(TaskKind task) { return static_cast<std::uint64_t>(task) + 1; }

template <typename Entry, typename Make>
TaskStream BuildStream(const std::vector<Entry>& corpus, TaskKind task,
                       const StreamOptions& options, Make make) {
  std::vector<std::vector<TrainingExample>> slots(corpus.size());
  std::vector<std::string> errors(corpus.size());
  ParallelFor(corpus.size(), options.jobs, [&](std::size_t i) {
    Rng rng(DeriveSeed(options.seed, corpus[i].id, options.epoch, TaskSalt(task)));
    try {
      slots[i] = make(corpus[i], rng);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  TaskStream stream;
  stream.task = task;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!errors[i].empty()) {
      spdlog::warn("{}: skipping {} for {}", TaskKindName(task), corpus[i].id, errors[i]);
      ++stream.skipped;
      continue;
    }
    for (TrainingExample& ex : slots[i]) stream.examples.push_back(std::move(ex));
  }
  return stream;
}

}  // namespace

const char* TaskKindName(TaskKind task) {
  switch (task) {
    case TaskKind::kGenerateText: return "generate";
    case TaskKind::kMaskAll: return "mask-all";
    case TaskKind::kMaskComponents: return "mask-components";
    case TaskKind::kMaskNodes: return "mask-nodes";
    case TaskKind::kMaskAllReconfigured: return "mask-all-reconfigured";
    case TaskKind::kMaskComponentsReconfigured: return "mask-components-reconfigured";
    case TaskKind::kMaskNodesReconfigured: return "mask-nodes-reconfigured";
    case TaskKind::kSentenceMlm: return "sentence-mlm";
    case TaskKind::kReorderFromReconfigured: return "reorder-reconfigured";
    case TaskKind::kReorderFromRandomized: return "reorder-randomized";
    case TaskKind::kGenerateAndReorder: return "generate-and-reorder";
  }
  return "?";
}

std::optional<TaskKind> ParseTaskKind(std::string_view name) {
  for (TaskKind task : kAllTaskKinds) {
    if (name == TaskKindName(task)) return task;
  }
  return std::nullopt;
}

std::string ToJsonLine(const TrainingExample& ex,
                       const std::vector<std::pair<std::string, std::int64_t>>& extra) {
  nlohmann::ordered_json j;
  j["id"] = ex.id;
  j["task"] = TaskKindName(ex.task);
  j["input"] = ex.input.Join();
  j["target"] = ex.target.Join();
  for (const auto& [key, value] : extra) j[key] = value;
  return j.dump();
}

TrainingExample ReorderPair(const AmrExample& example, LinearizationKind mode, Rng& rng) {
  TrainingExample ex;
  ex.id = example.id;
  switch (mode) {
    case LinearizationKind::kReconfigured:
      ex.task = TaskKind::kReorderFromReconfigured;
      break;
    case LinearizationKind::kRandomized:
      ex.task = TaskKind::kReorderFromRandomized;
      break;
    default:
      throw std::invalid_argument("reordering starts from a reconfigured or randomized tree");
  }
  ex.input = Linearize(example.graph, &example.tree, mode, rng);
  ex.target = Simplify(Serialize(example.tree));
  return ex;
}

TrainingExample MakeExample(const AmrExample& example, TaskKind task, LinearizationKind strategy,
                            Rng& rng, double mask_rate) {
  switch (task) {
    case TaskKind::kGenerateText: {
      TrainingExample ex{example.id, task, {}, TokenSeq::Split(example.sentence)};
      ex.input = Linearize(example.graph, &example.tree, strategy, rng);
      if (ex.target.empty()) throw std::invalid_argument("entry has no sentence");
      return ex;
    }
    case TaskKind::kSentenceMlm: {
      CorruptionPair pair = SentenceMlm(TokenSeq::Split(example.sentence), rng, mask_rate);
      return {example.id, task, std::move(pair.input), std::move(pair.target)};
    }
    case TaskKind::kReorderFromReconfigured:
      return ReorderPair(example, LinearizationKind::kReconfigured, rng);
    case TaskKind::kReorderFromRandomized:
      return ReorderPair(example, LinearizationKind::kRandomized, rng);
    case TaskKind::kGenerateAndReorder: {
      TrainingExample ex = ReorderPair(example, LinearizationKind::kReconfigured, rng);
      const TokenSeq sentence = TokenSeq::Split(example.sentence);
      if (sentence.empty()) throw std::invalid_argument("entry has no sentence");
      ex.task = task;
      ex.target.tokens.emplace_back(kSeparatorToken);
      ex.target.tokens.insert(ex.target.tokens.end(), sentence.tokens.begin(),
                              sentence.tokens.end());
      return ex;
    }
    default:
      break;
  }
  const MaskSpec spec = *MaskSpecFor(task);
  TokenSeq base = Linearize(example.graph, &example.tree, spec.base, rng);
  MaskStrategy strategy;
  strategy.target = spec.target;
  strategy.global_rate = mask_rate;
  CorruptionPair pair = Mask(base, strategy, rng);
  return {example.id, task, std::move(pair.input), std::move(pair.target)};
}

TaskStream BuildTaskStream(const std::vector<AmrExample>& corpus, TaskKind task,
                           const StreamOptions& options) {
  return BuildStream(corpus, task, options, [&](const AmrExample& ex, Rng& rng) {
    return std::vector<TrainingExample>{
        MakeExample(ex, task, options.strategy, rng, options.mask_rate)};
  });
}

TaskStream AdversarialStream(const std::vector<AmrExample>& corpus, LinearizationKind strategy,
                             std::size_t epoch, std::uint64_t seed, std::size_t jobs) {
  StreamOptions options;
  options.seed = seed;
  options.epoch = epoch;
  options.strategy = strategy;
  options.jobs = jobs;
  return BuildTaskStream(corpus, TaskKind::kGenerateText, options);
}

TaskStream BuildRdfTaskStream(const std::vector<RdfEntry>& corpus, TaskKind task,
                              const StreamOptions& options) {
  if (task != TaskKind::kGenerateText && task != TaskKind::kSentenceMlm) {
    throw std::invalid_argument(std::string("task ") + TaskKindName(task) +
                                " needs AMR input");
  }
  if (options.strategy == LinearizationKind::kReconfigured) {
    throw std::invalid_argument("RDF input supports canonical or randomized order only");
  }
  return BuildStream(corpus, task, options, [&](const RdfEntry& entry, Rng& rng) {
    std::vector<TrainingExample> out;
    const TokenSeq input = options.strategy == LinearizationKind::kRandomized
                               ? LinearizeRdf(RandomizeRdf(entry, rng))
                               : LinearizeRdf(entry);
    for (std::size_t r = 0; r < entry.references.size(); ++r) {
      const std::string id = entry.id + "#" + std::to_string(r + 1);
      TokenSeq sentence = TokenSeq::Split(entry.references[r]);
      if (task == TaskKind::kGenerateText) {
        out.push_back({id, task, input, std::move(sentence)});
      } else {
        CorruptionPair pair = SentenceMlm(sentence, rng, options.mask_rate);
        out.push_back({id, task, std::move(pair.input), std::move(pair.target)});
      }
    }
    return out;
  });
}

std::vector<Batch> MixtureBatches(const std::map<TaskKind, TaskStream>& streams,
                                  const MixtureConfig& config, std::size_t num_batches, Rng& rng) {
  const double q = config.scaffold_probability;
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("scaffold probability outside [0, 1]");
  if (q > 0.0 && config.enabled_scaffolds.empty()) throw NoScaffolds();
  if (config.batch_size == 0) throw std::invalid_argument("batch size must be positive");

  auto stream_for = [&](TaskKind task) -> const TaskStream& {
    auto it = streams.find(task);
    if (it == streams.end() || it->second.examples.empty()) {
      throw std::invalid_argument(std::string("no examples for task ") + TaskKindName(task));
    }
    return it->second;
  };
  if (q < 1.0) stream_for(TaskKind::kGenerateText);
  if (q > 0.0) {
    for (TaskKind task : config.enabled_scaffolds) stream_for(task);
  }

  std::map<TaskKind, std::size_t> cursor;
  std::vector<Batch> batches;
  batches.reserve(num_batches);
  for (std::size_t b = 0; b < num_batches; ++b) {
    // Always consume the same number of draws per batch so a change of q
    // does not shift the scaffold choices.
    const bool scaffold = rng.Uniform01() < q;
    const std::size_t pick =
        config.enabled_scaffolds.empty() ? 0 : rng.UniformIndex(config.enabled_scaffolds.size());
    Batch batch;
    batch.task = scaffold ? config.enabled_scaffolds[pick] : TaskKind::kGenerateText;
    const TaskStream& stream = stream_for(batch.task);
    std::size_t& at = cursor[batch.task];
    for (std::size_t k = 0; k < config.batch_size; ++k) {
      batch.examples.push_back(stream.examples[at]);
      at = (at + 1) % stream.examples.size();
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

std::vector<std::size_t> SelectSubset(std::size_t size, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(DeriveSeed(seed, "subset"));
  rng.Shuffle(order);
  if (n < size) order.resize(n);
  return order;
}

}  // namespace graphlin
