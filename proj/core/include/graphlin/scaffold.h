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

#ifndef GRAPHLIN_SCAFFOLD_H_
#define GRAPHLIN_SCAFFOLD_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphlin/corpus.h"
#include "graphlin/rdf.h"
#include "graphlin/relinearize.h"
#include "graphlin/rng.h"
#include "graphlin/token_seq.h"

namespace graphlin {

enum class TaskKind {
  kGenerateText,
  kMaskAll,
  kMaskComponents,
  kMaskNodes,
  kMaskAllReconfigured,
  kMaskComponentsReconfigured,
  kMaskNodesReconfigured,
  kSentenceMlm,
  kReorderFromReconfigured,
  kReorderFromRandomized,
  kGenerateAndReorder,
};

inline constexpr TaskKind kAllTaskKinds[] = {
    TaskKind::kGenerateText,         TaskKind::kMaskAll,
    TaskKind::kMaskComponents,       TaskKind::kMaskNodes,
    TaskKind::kMaskAllReconfigured,  TaskKind::kMaskComponentsReconfigured,
    TaskKind::kMaskNodesReconfigured, TaskKind::kSentenceMlm,
    TaskKind::kReorderFromReconfigured, TaskKind::kReorderFromRandomized,
    TaskKind::kGenerateAndReorder,
};

// Stable names used in JSONL records and on the command line,
// e.g. "generate", "mask-nodes-reconfigured", "reorder-randomized".
const char* TaskKindName(TaskKind task);
std::optional<TaskKind> ParseTaskKind(std::string_view name);

struct TrainingExample {
  std::string id;
  TaskKind task = TaskKind::kGenerateText;
  TokenSeq input;
  TokenSeq target;

  bool operator==(const TrainingExample&) const = default;
};

// {"id":..., "task":..., "input":..., "target":...} on one line; extra
// integer fields (e.g. "batch") are appended when given.
std::string ToJsonLine(const TrainingExample& ex,
                       const std::vector<std::pair<std::string, std::int64_t>>& extra = {});

struct MixtureConfig {
  double scaffold_probability = 0.5;
  std::vector<TaskKind> enabled_scaffolds;
  std::size_t batch_size = 6;
  std::uint64_t seed = 0;
};

class NoScaffolds : public std::invalid_argument {
 public:
  NoScaffolds()
      : std::invalid_argument("NoScaffolds: scaffold probability > 0 but none enabled") {}
};

// Input: the simplified relinearization; target: the simplified canonical
// tree. `mode` must be kReconfigured or kRandomized.
TrainingExample ReorderPair(const AmrExample& example, LinearizationKind mode, Rng& rng);

// One example of `task` for an AMR entry. GenerateText uses `strategy` for
// its input; masking and reordering tasks fix their own linearization.
// GenerateAndReorder pairs a reconfigured input with the canonical tree,
// <sep> and the sentence; no default configuration enables it.
TrainingExample MakeExample(const AmrExample& example, TaskKind task, LinearizationKind strategy,
                            Rng& rng, double mask_rate = 0.15);

struct StreamOptions {
  std::uint64_t seed = 0;
  std::size_t epoch = 1;
  LinearizationKind strategy = LinearizationKind::kCanonical;
  double mask_rate = 0.15;
  std::size_t jobs = 1;
};

struct TaskStream {
  TaskKind task = TaskKind::kGenerateText;
  std::vector<TrainingExample> examples;
  std::size_t skipped = 0;
};

// One example per corpus entry, in corpus order. The generator for each
// entry is keyed on (seed, id, epoch, task), so the output does not depend
// on `jobs`. Entries that cannot produce the task are skipped and counted.
TaskStream BuildTaskStream(const std::vector<AmrExample>& corpus, TaskKind task,
                           const StreamOptions& options);

// GenerateText examples whose linearization is redrawn every epoch.
TaskStream AdversarialStream(const std::vector<AmrExample>& corpus, LinearizationKind strategy,
                             std::size_t epoch, std::uint64_t seed, std::size_t jobs = 1);

// RDF entries: GenerateText (one example per reference; canonical or
// randomized triple order) or SentenceMlm over the references.
TaskStream BuildRdfTaskStream(const std::vector<RdfEntry>& corpus, TaskKind task,
                              const StreamOptions& options);

struct Batch {
  TaskKind task = TaskKind::kGenerateText;
  std::vector<TrainingExample> examples;
};

// Draws `num_batches` task-homogeneous batches: with probability q a
// uniformly chosen enabled scaffold, otherwise GenerateText. Each stream is
// consumed in order and wraps around. Throws NoScaffolds.
std::vector<Batch> MixtureBatches(const std::map<TaskKind, TaskStream>& streams,
                                  const MixtureConfig& config, std::size_t num_batches, Rng& rng);

// Indices of the first n entries after a seeded shuffle, in shuffled order.
// n >= size keeps every entry.
std::vector<std::size_t> SelectSubset(std::size_t size, std::size_t n, std::uint64_t seed);

}  // namespace graphlin

#endif  // GRAPHLIN_SCAFFOLD_H_
