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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "graphlin/bleu.h"
#include "graphlin/corpus.h"
#include "graphlin/corruption.h"
#include "graphlin/parallel.h"
#include "graphlin/penman.h"
#include "graphlin/rdf.h"
#include "graphlin/regression.h"
#include "graphlin/relinearize.h"
#include "graphlin/scaffold.h"
#include "graphlin/smatch.h"
#include "json.hpp"

namespace graphlin::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.3.0";

// Salts that keep per-example generators of different commands apart.
constexpr std::uint64_t kRelinearizeSalt = 101;
constexpr std::uint64_t kCorruptSalt = 102;
constexpr std::uint64_t kSmatchSalt = 103;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Global {
  std::uint64_t seed = kDefaultSeed;
  std::size_t jobs = 1;
  bool strict = false;
  bool allow_cycles = false;
  bool quiet = false;
};

enum class Format { kAmr, kRdf };

void InstallLogger(bool quiet) {
  auto logger = spdlog::get("graphlin");
  if (!logger) logger = spdlog::stderr_logger_mt("graphlin");
  logger->set_pattern("graphlin: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(quiet ? spdlog::level::err : spdlog::level::warn);
}

bool IsRdfExtension(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".xml" || ext == ".jsonl" || ext == ".json";
}

Format ResolveFormat(const std::string& flag, const fs::path& input) {
  if (flag == "amr") return Format::kAmr;
  if (flag == "rdf") return Format::kRdf;
  if (flag != "auto") throw UsageError("unknown --format " + flag);
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::recursive_directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".xml") return Format::kRdf;
    }
    return Format::kAmr;
  }
  return IsRdfExtension(input) ? Format::kRdf : Format::kAmr;
}

// A file, or every matching regular file below a directory in path order.
std::vector<fs::path> InputFiles(const fs::path& input, Format format) {
  if (!fs::exists(input)) throw InputError("cannot open " + input.string());
  if (!fs::is_directory(input)) return {input};
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(input)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.filename().string().front() == '.') continue;
    if (format == Format::kRdf ? IsRdfExtension(p) : p.extension() == ".txt") files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  return files;
}

AmrCorpus LoadAmr(const fs::path& input, const Global& g) {
  std::vector<AmrRecord> records;
  const std::vector<fs::path> files = InputFiles(input, Format::kAmr);
  for (const fs::path& file : files) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open " + file.string());
    const std::string prefix = files.size() > 1 ? file.stem().string() + "#" : "amr";
    for (AmrRecord& r : ReadAmrRecords(in, prefix)) records.push_back(std::move(r));
  }
  LoadOptions options;
  options.strict = g.strict;
  options.graph.allow_cycles = g.allow_cycles;
  return ParseAmrRecords(records, options);
}

std::vector<RdfEntry> LoadRdf(const fs::path& input) {
  std::vector<RdfEntry> entries;
  for (const fs::path& file : InputFiles(input, Format::kRdf)) {
    for (RdfEntry& e : LoadRdfCorpus(file)) entries.push_back(std::move(e));
  }
  return entries;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out) throw InputError("failed writing " + path.string());
}

void WriteManifest(const std::string& output, const Json& manifest) {
  WriteFile(output + ".manifest.json", manifest.dump(2) + "\n");
}

void Emit(const Json& report, const std::string& output, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (output.empty()) {
    out << text;
  } else {
    WriteFile(output, text);
  }
}

Json ManifestHeader(const std::string& command, const Global& g, const std::string& input,
                    const std::string& output) {
  Json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["seed"] = g.seed;
  m["input"] = input;
  m["output"] = output;
  return m;
}

Json FailureList(const std::vector<LoadFailure>& failures) {
  Json list = Json::array();
  for (const LoadFailure& f : failures) {
    list.push_back({{"id", f.id}, {"line", f.line}, {"message", f.message}});
  }
  return list;
}

LinearizationKind ParseStrategy(const std::string& name) {
  auto kind = ParseLinearizationKind(name);
  if (!kind) throw UsageError("unknown strategy '" + name + "'");
  return *kind;
}

TaskKind ParseTask(const std::string& name) {
  auto task = ParseTaskKind(name);
  if (!task) throw UsageError("unknown task '" + name + "'");
  return *task;
}

double Mean(double sum, std::size_t n) { return n == 0 ? 0.0 : sum / static_cast<double>(n); }

// Masks in the inputs of a stream over its input tokens.
std::pair<std::size_t, std::size_t> MaskCounts(const std::vector<TrainingExample>& examples) {
  std::size_t masks = 0, tokens = 0;
  for (const TrainingExample& ex : examples) {
    tokens += ex.input.size();
    masks += static_cast<std::size_t>(
        std::count(ex.input.tokens.begin(), ex.input.tokens.end(), std::string(kMaskToken)));
  }
  return {masks, tokens};
}

// ---------------------------------------------------------------- stats

struct StatsFlags {
  std::string input;
  std::string format = "auto";
  std::string output;
};

Json AmrStats(const AmrCorpus& corpus) {
  Json r;
  r["format"] = "amr";
  r["examples"] = corpus.examples.size();
  r["parse_failures"] = corpus.failures.size();
  r["alignments_stripped"] = corpus.alignments_stripped;
  if (corpus.examples.empty()) return r;
  double edges = 0, words = 0, variables = 0, reentrancies = 0;
  std::size_t max_reentrancies = 0, with_reentrancy = 0;
  for (const AmrExample& ex : corpus.examples) {
    edges += static_cast<double>(EdgeCount(ex.graph));
    words += static_cast<double>(TokenSeq::Split(ex.sentence).size());
    variables += static_cast<double>(ex.graph.variable_count());
    const std::size_t re = ReentrancyCount(ex.tree);
    reentrancies += static_cast<double>(re);
    max_reentrancies = std::max(max_reentrancies, re);
    with_reentrancy += re > 0;
  }
  const std::size_t n = corpus.examples.size();
  r["avg_edges"] = Mean(edges, n);
  r["avg_variables"] = Mean(variables, n);
  r["avg_target_words"] = Mean(words, n);
  r["reentrancies"] = {{"total", static_cast<std::size_t>(reentrancies)},
                       {"mean", Mean(reentrancies, n)},
                       {"max", max_reentrancies},
                       {"graphs_with_reentrancy", with_reentrancy}};
  return r;
}

Json RdfStats(const std::vector<RdfEntry>& entries) {
  Json r;
  r["format"] = "rdf";
  r["examples"] = entries.size();
  r["parse_failures"] = 0;
  std::size_t references = 0;
  double edges = 0, words = 0;
  std::map<std::string, std::size_t> categories;
  for (const RdfEntry& e : entries) {
    edges += static_cast<double>(e.triples.size());
    for (const std::string& ref : e.references) {
      words += static_cast<double>(TokenSeq::Split(ref).size());
      ++references;
    }
    ++categories[e.category];
  }
  r["references"] = references;
  if (entries.empty()) return r;
  r["avg_edges"] = Mean(edges, entries.size());
  r["avg_target_words"] = Mean(words, references);
  r["categories"] = categories.size();
  return r;
}

int RunStats(const StatsFlags& f, const Global& g, std::ostream& out) {
  const Format format = ResolveFormat(f.format, f.input);
  Json report = format == Format::kAmr ? AmrStats(LoadAmr(f.input, g)) : RdfStats(LoadRdf(f.input));
  Emit(report, f.output, out);
  return kExitOk;
}

// ---------------------------------------------------------------- relinearize

struct RelinearizeFlags {
  std::string input;
  std::string output;
  std::string strategy = "reconfigured";
  std::size_t epoch = 1;
};

void RequireAmr(const std::string& command, const std::string& input) {
  if (ResolveFormat("auto", input) != Format::kAmr) {
    throw UsageError(command + " expects an AMR corpus");
  }
}

int RunRelinearize(const RelinearizeFlags& f, const Global& g) {
  const LinearizationKind kind = ParseStrategy(f.strategy);
  RequireAmr("relinearize", f.input);
  const AmrCorpus corpus = LoadAmr(f.input, g);
  const auto& examples = corpus.examples;
  std::vector<std::string> lines(examples.size());
  std::vector<std::size_t> inverted(examples.size(), 0);
  ParallelFor(examples.size(), g.jobs, [&](std::size_t i) {
    const AmrExample& ex = examples[i];
    Rng rng(DeriveSeed(g.seed, ex.id, f.epoch, kRelinearizeSalt));
    const LinearTree tree = Relinearize(ex.graph, &ex.tree, kind, rng);
    const TokenSeq raw = Serialize(tree);
    const AmrGraph back = TreeToGraph(ParsePenman(raw.Join()));
    const bool ok = kind == LinearizationKind::kRandomized ? SameTriples(back, ex.graph)
                                                           : back == ex.graph;
    if (!ok) throw InvariantError("relinearized graph differs from source for " + ex.id);
    for (const TreeNode& node : tree.nodes()) {
      for (const Branch& b : node.branches) inverted[i] += IsInvertedRole(b.role);
    }
    Json j;
    j["id"] = ex.id;
    j["strategy"] = LinearizationKindName(kind);
    j["top"] = tree.root().variable;
    j["input"] = Simplify(raw).Join();
    j["penman"] = raw.Join();
    lines[i] = j.dump() + "\n";
  });
  std::string text;
  std::size_t inverted_total = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    text += lines[i];
    inverted_total += inverted[i];
  }
  WriteFile(f.output, text);

  Json m = ManifestHeader("relinearize", g, f.input, f.output);
  m["config"] = {{"strategy", LinearizationKindName(kind)}, {"epoch", f.epoch}};
  m["counts"] = {{"examples", examples.size()},
                 {"parse_failures", corpus.failures.size()},
                 {"inverted_roles", inverted_total}};
  m["failures"] = FailureList(corpus.failures);
  WriteManifest(f.output, m);
  return kExitOk;
}

// ---------------------------------------------------------------- corrupt

std::size_t EligibleCount(const TokenSeq& seq, MaskTarget target) {
  if (target == MaskTarget::kSentenceTokens) return seq.size();
  std::size_t n = 0;
  for (TokenClass c : ClassifyTokens(seq)) {
    n += target == MaskTarget::kAllGraphTokens ||
         (target == MaskTarget::kComponentsOnly && c == TokenClass::kComponent) ||
         (target == MaskTarget::kNodesOnly && c == TokenClass::kNode);
  }
  return n;
}

struct CorruptFlags {
  std::string input;
  std::string output;
  std::string strategy = "all";
  std::string linearization = "canonical";
  double rate = 0.15;
  std::size_t epoch = 1;
};

int RunCorrupt(const CorruptFlags& f, const Global& g) {
  auto target = ParseMaskTarget(f.strategy);
  if (!target) throw UsageError("unknown mask strategy '" + f.strategy + "'");
  if (!(f.rate > 0.0 && f.rate < 1.0)) throw UsageError("--rate must lie in (0, 1)");
  const LinearizationKind kind = ParseStrategy(f.linearization);
  RequireAmr("corrupt", f.input);
  MaskStrategy strategy;
  strategy.target = *target;
  strategy.global_rate = f.rate;

  const AmrCorpus corpus = LoadAmr(f.input, g);
  const auto& examples = corpus.examples;
  struct Slot {
    std::string line;
    std::size_t tokens = 0;
    std::size_t masked = 0;
    double expected = 0.0;
    bool capped = false;
    std::string error;
  };
  std::vector<Slot> slots(examples.size());
  ParallelFor(examples.size(), g.jobs, [&](std::size_t i) {
    const AmrExample& ex = examples[i];
    Slot& s = slots[i];
    Rng rng(DeriveSeed(g.seed, ex.id, f.epoch, kCorruptSalt));
    const TokenSeq seq = *target == MaskTarget::kSentenceTokens
                             ? TokenSeq::Split(ex.sentence)
                             : Linearize(ex.graph, &ex.tree, kind, rng);
    try {
      CorruptionPair pair = Mask(seq, strategy, rng);
      s.tokens = seq.size();
      s.masked = pair.masked;
      s.expected = pair.probability * static_cast<double>(EligibleCount(seq, *target));
      s.capped = pair.probability >= 1.0;
      Json j;
      j["id"] = ex.id;
      j["strategy"] = MaskTargetName(*target);
      j["input"] = pair.input.Join();
      j["target"] = pair.target.Join();
      j["masked"] = pair.masked;
      s.line = j.dump() + "\n";
    } catch (const EmptyClass& e) {
      s.error = e.what();
    } catch (const std::invalid_argument& e) {
      s.error = e.what();
    }
  });
  std::string text;
  std::size_t tokens = 0, masked = 0, written = 0, skipped = 0, capped = 0;
  double expected = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error.empty()) {
      spdlog::warn("corrupt: skipping {}: {}", examples[i].id, slots[i].error);
      ++skipped;
      continue;
    }
    text += slots[i].line;
    tokens += slots[i].tokens;
    masked += slots[i].masked;
    expected += slots[i].expected;
    capped += slots[i].capped;
    ++written;
  }
  if (capped > 0) {
    spdlog::warn("corrupt: probability capped at 1 on {} example(s); realized rate falls short",
                 capped);
  }
  WriteFile(f.output, text);

  Json m = ManifestHeader("corrupt", g, f.input, f.output);
  m["config"] = {{"strategy", MaskTargetName(*target)},
                 {"linearization", LinearizationKindName(kind)},
                 {"rate", f.rate},
                 {"epoch", f.epoch},
                 {"mask_token", std::string(kMaskToken)}};
  m["counts"] = {{"examples", written},
                 {"skipped", skipped},
                 {"parse_failures", corpus.failures.size()},
                 {"tokens", tokens},
                 {"masked", masked},
                 {"capped_examples", capped}};
  m["realized_rate"] = tokens == 0 ? 0.0 : static_cast<double>(masked) / static_cast<double>(tokens);
  m["expected_rate"] = tokens == 0 ? 0.0 : expected / static_cast<double>(tokens);
  m["failures"] = FailureList(corpus.failures);
  WriteManifest(f.output, m);
  return kExitOk;
}

// ---------------------------------------------------------------- pairs

struct PairsFlags {
  std::string input;
  std::string output;
  std::string task = "reorder-reconfigured";
  std::string strategy = "canonical";
  std::string format = "auto";
  double rate = 0.15;
  std::size_t epoch = 1;
};

TaskStream BuildStreamFor(Format format, const AmrCorpus* amr, const std::vector<RdfEntry>* rdf,
                          TaskKind task, const StreamOptions& options) {
  return format == Format::kAmr ? BuildTaskStream(amr->examples, task, options)
                                : BuildRdfTaskStream(*rdf, task, options);
}

int RunPairs(const PairsFlags& f, const Global& g) {
  const TaskKind task = ParseTask(f.task);
  const Format format = ResolveFormat(f.format, f.input);
  if (!(f.rate > 0.0 && f.rate < 1.0)) throw UsageError("--rate must lie in (0, 1)");
  StreamOptions options;
  options.seed = g.seed;
  options.epoch = f.epoch;
  options.strategy = ParseStrategy(f.strategy);
  options.mask_rate = f.rate;
  options.jobs = g.jobs;

  AmrCorpus amr;
  std::vector<RdfEntry> rdf;
  if (format == Format::kAmr) {
    amr = LoadAmr(f.input, g);
  } else {
    rdf = LoadRdf(f.input);
  }
  TaskStream stream;
  try {
    stream = BuildStreamFor(format, &amr, &rdf, task, options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string text;
  for (const TrainingExample& ex : stream.examples) text += ToJsonLine(ex) + "\n";
  WriteFile(f.output, text);

  Json m = ManifestHeader("pairs", g, f.input, f.output);
  m["config"] = {{"task", TaskKindName(task)},
                 {"format", format == Format::kAmr ? "amr" : "rdf"},
                 {"strategy", LinearizationKindName(options.strategy)},
                 {"rate", f.rate},
                 {"epoch", f.epoch}};
  const auto [masks, tokens] = MaskCounts(stream.examples);
  m["counts"] = {{"examples", stream.examples.size()},
                 {"skipped", stream.skipped},
                 {"parse_failures", amr.failures.size()},
                 {"input_tokens", tokens},
                 {"masked", masks}};
  m["realized_rate"] = tokens == 0 ? 0.0 : static_cast<double>(masks) / static_cast<double>(tokens);
  m["failures"] = FailureList(amr.failures);
  WriteManifest(f.output, m);
  return kExitOk;
}

// ---------------------------------------------------------------- stream

struct StreamFlags {
  std::string input;
  std::string output;
  std::string strategy = "canonical";
  std::string format = "auto";
  std::vector<std::string> scaffolds;
  double q = 0.5;
  std::size_t epochs = 1;
  std::size_t subset = 0;
  std::size_t batch_size = 6;
  double rate = 0.15;
};

int RunStream(const StreamFlags& f, const Global& g) {
  const Format format = ResolveFormat(f.format, f.input);
  if (!(f.q >= 0.0 && f.q <= 1.0)) throw UsageError("--q must lie in [0, 1]");
  if (!(f.rate > 0.0 && f.rate < 1.0)) throw UsageError("--rate must lie in (0, 1)");
  if (f.batch_size == 0) throw UsageError("--batch-size must be positive");
  if (f.epochs == 0) throw UsageError("--epochs must be positive");
  MixtureConfig mixture;
  mixture.scaffold_probability = f.q;
  mixture.batch_size = f.batch_size;
  mixture.seed = g.seed;
  for (const std::string& name : f.scaffolds) {
    const TaskKind task = ParseTask(name);
    if (task == TaskKind::kGenerateText) throw UsageError("generate is not a scaffold");
    if (std::find(mixture.enabled_scaffolds.begin(), mixture.enabled_scaffolds.end(), task) ==
        mixture.enabled_scaffolds.end()) {
      mixture.enabled_scaffolds.push_back(task);
    }
  }
  if (f.q > 0.0 && mixture.enabled_scaffolds.empty()) throw NoScaffolds();

  AmrCorpus amr;
  std::vector<RdfEntry> rdf;
  std::size_t corpus_size = 0;
  if (format == Format::kAmr) {
    amr = LoadAmr(f.input, g);
    corpus_size = amr.examples.size();
  } else {
    rdf = LoadRdf(f.input);
    corpus_size = rdf.size();
  }
  if (f.subset > 0) {
    std::vector<std::size_t> keep = SelectSubset(corpus_size, f.subset, g.seed);
    std::sort(keep.begin(), keep.end());
    if (format == Format::kAmr) {
      std::vector<AmrExample> chosen;
      for (std::size_t i : keep) chosen.push_back(amr.examples[i]);
      amr.examples = std::move(chosen);
    } else {
      std::vector<RdfEntry> chosen;
      for (std::size_t i : keep) chosen.push_back(rdf[i]);
      rdf = std::move(chosen);
    }
  }
  const std::size_t selected = format == Format::kAmr ? amr.examples.size() : rdf.size();

  StreamOptions options;
  options.seed = g.seed;
  options.strategy = ParseStrategy(f.strategy);
  options.mask_rate = f.rate;
  options.jobs = g.jobs;

  std::string text;
  std::size_t batch_index = 0, scaffold_batches = 0, written = 0;
  std::map<std::string, std::size_t> per_task;
  std::map<std::string, std::pair<std::size_t, std::size_t>> mask_counts;
  std::size_t skipped = 0;
  for (std::size_t epoch = 1; epoch <= f.epochs; ++epoch) {
    options.epoch = epoch;
    std::map<TaskKind, TaskStream> streams;
    try {
      if (f.q < 1.0) {
        streams[TaskKind::kGenerateText] =
            BuildStreamFor(format, &amr, &rdf, TaskKind::kGenerateText, options);
      }
      if (f.q > 0.0) {
        for (TaskKind task : mixture.enabled_scaffolds) {
          streams[task] = BuildStreamFor(format, &amr, &rdf, task, options);
        }
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    for (const auto& [task, stream] : streams) skipped += stream.skipped;
    const std::size_t base = streams.count(TaskKind::kGenerateText)
                                 ? streams[TaskKind::kGenerateText].examples.size()
                                 : streams.begin()->second.examples.size();
    const std::size_t num_batches = (base + f.batch_size - 1) / f.batch_size;
    Rng rng(DeriveSeed(g.seed, "mixture", epoch));
    std::vector<Batch> batches;
    try {
      batches = MixtureBatches(streams, mixture, num_batches, rng);
    } catch (const NoScaffolds&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    for (const Batch& b : batches) {
      for (const TrainingExample& ex : b.examples) {
        if (ex.task != b.task) throw InvariantError("batch mixes task kinds");
        text += ToJsonLine(ex, {{"epoch", static_cast<std::int64_t>(epoch)},
                                {"batch", static_cast<std::int64_t>(batch_index)}}) +
                "\n";
        ++written;
      }
      const std::string name = TaskKindName(b.task);
      ++per_task[name];
      scaffold_batches += b.task != TaskKind::kGenerateText;
      auto [masks, tokens] = MaskCounts(b.examples);
      mask_counts[name].first += masks;
      mask_counts[name].second += tokens;
      ++batch_index;
    }
  }
  WriteFile(f.output, text);

  Json m = ManifestHeader("stream", g, f.input, f.output);
  Json scaffold_names = Json::array();
  for (TaskKind t : mixture.enabled_scaffolds) scaffold_names.push_back(TaskKindName(t));
  m["config"] = {{"format", format == Format::kAmr ? "amr" : "rdf"},
                 {"strategy", LinearizationKindName(options.strategy)},
                 {"scaffolds", scaffold_names},
                 {"q", f.q},
                 {"epochs", f.epochs},
                 {"subset", f.subset},
                 {"batch_size", f.batch_size},
                 {"rate", f.rate},
                 {"mixture_seed", "derive(seed, \"mixture\", epoch)"}};
  Json batches_by_task = Json::object();
  for (const auto& [name, count] : per_task) batches_by_task[name] = count;
  Json rates = Json::object();
  for (const auto& [name, counts] : mask_counts) {
    if (counts.first == 0 && name.rfind("mask", 0) != 0 && name != "sentence-mlm") continue;
    rates[name] = counts.second == 0 ? 0.0
                                     : static_cast<double>(counts.first) /
                                           static_cast<double>(counts.second);
  }
  m["counts"] = {{"corpus_examples", corpus_size},
                 {"selected_examples", selected},
                 {"parse_failures", amr.failures.size()},
                 {"skipped", skipped},
                 {"batches", batch_index},
                 {"examples_written", written},
                 {"batches_by_task", batches_by_task}};
  m["scaffold_fraction"] =
      batch_index == 0 ? 0.0
                       : static_cast<double>(scaffold_batches) / static_cast<double>(batch_index);
  m["realized_rate"] = rates;
  m["failures"] = FailureList(amr.failures);
  WriteManifest(f.output, m);
  return kExitOk;
}

// ---------------------------------------------------------------- eval

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

struct BleuFlags {
  std::string hyp;
  std::vector<std::string> refs;
  std::string output;
};

int RunEvalBleu(const BleuFlags& f, std::ostream& out) {
  const std::vector<std::string> hyps = ReadLines(f.hyp);
  std::vector<std::vector<std::string>> refs(hyps.size());
  for (const std::string& path : f.refs) {
    const std::vector<std::string> lines = ReadLines(path);
    if (lines.size() != hyps.size()) {
      throw InputError("reference file " + path + " has " + std::to_string(lines.size()) +
                       " lines, hypotheses have " + std::to_string(hyps.size()));
    }
    for (std::size_t i = 0; i < lines.size(); ++i) refs[i].push_back(lines[i]);
  }
  const BleuReport r = CorpusBleu(hyps, refs);
  Json j;
  j["score"] = r.score;
  j["precisions"] = r.precisions;
  j["brevity_penalty"] = r.brevity_penalty;
  j["hypothesis_length"] = r.hypothesis_length;
  j["reference_length"] = r.reference_length;
  j["segments"] = hyps.size();
  j["signature"] = r.signature;
  Emit(j, f.output, out);
  return kExitOk;
}

struct SmatchFlags {
  std::string gold;
  std::string pred;
  bool exact = false;
  std::size_t restarts = 4;
  std::string output;
};

std::vector<AmrRecord> ReadRecords(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return ReadAmrRecords(in);
}

int RunEvalSmatch(const SmatchFlags& f, const Global& g, std::ostream& out) {
  const std::vector<AmrRecord> gold = ReadRecords(f.gold);
  const std::vector<AmrRecord> pred = ReadRecords(f.pred);
  if (gold.size() != pred.size()) {
    throw InputError("gold has " + std::to_string(gold.size()) + " graphs, prediction has " +
                     std::to_string(pred.size()));
  }
  GraphOptions options;
  options.allow_cycles = g.allow_cycles;
  struct Slot {
    SmatchResult result;
    std::string error;
    bool too_large = false;
  };
  std::vector<Slot> slots(gold.size());
  ParallelFor(gold.size(), g.jobs, [&](std::size_t i) {
    Slot& s = slots[i];
    AmrGraph a, b;
    try {
      a = TreeToGraph(ParsePenman(gold[i].graph_text), options);
      b = TreeToGraph(ParsePenman(pred[i].graph_text), options);
    } catch (const std::runtime_error& e) {
      s.error = gold[i].id + ": " + e.what();
      return;
    }
    if (f.exact) {
      try {
        s.result = SmatchExact(a, b);
      } catch (const SmatchTooLarge& e) {
        s.error = gold[i].id + ": " + e.what();
        s.too_large = true;
      }
    } else {
      Rng rng(DeriveSeed(g.seed, gold[i].id, 0, kSmatchSalt));
      s.result = Smatch(a, b, rng, f.restarts);
    }
  });
  std::size_t matched = 0, gold_total = 0, pred_total = 0, scored = 0, skipped = 0;
  double f_sum = 0.0;
  for (const Slot& s : slots) {
    if (!s.error.empty()) {
      if (g.strict || s.too_large) throw InputError(s.error);
      spdlog::warn("smatch: skipping pair {}", s.error);
      ++skipped;
      continue;
    }
    matched += s.result.matched;
    gold_total += s.result.left_total;
    pred_total += s.result.right_total;
    f_sum += s.result.f_score;
    ++scored;
  }
  const double precision = pred_total == 0 ? 0.0 : static_cast<double>(matched) / pred_total;
  const double recall = gold_total == 0 ? 0.0 : static_cast<double>(matched) / gold_total;
  Json j;
  j["mode"] = f.exact ? "exact" : "hill-climbing";
  if (!f.exact) j["restarts"] = f.restarts;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f_score"] = precision + recall > 0.0 ? 2 * precision * recall / (precision + recall) : 0.0;
  j["matched"] = matched;
  j["gold_triples"] = gold_total;
  j["pred_triples"] = pred_total;
  j["pairs"] = scored;
  j["skipped"] = skipped;
  j["mean_sentence_f"] = Mean(f_sum, scored);
  Emit(j, f.output, out);
  return kExitOk;
}

struct RegressFlags {
  std::string rows;
  bool select_bic = false;
  bool no_filter = false;
  double outlier_fraction = 0.005;
  std::string output;
};

Json FitJson(const RegressionResult& r) {
  Json coefficients = Json::object();
  for (std::size_t k = 0; k < r.names.size(); ++k) {
    coefficients[r.names[k]] = {{"estimate", r.coefficients[k]},
                                {"std_error", r.standard_errors[k]}};
  }
  return {{"coefficients", coefficients},
          {"bic", r.bic},
          {"r_squared", r.r_squared},
          {"adjusted_r_squared", r.adjusted_r_squared},
          {"rss", r.rss},
          {"n", r.n}};
}

int RunEvalRegress(const RegressFlags& f, const Global& g, std::ostream& out) {
  std::vector<CovariateRow> rows;
  std::size_t line_no = 0, skipped = 0;
  for (const std::string& line : ReadLines(f.rows)) {
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      const AnalysisRecord record = ParseAnalysisRecord(line);
      const LinearTree tree = ParsePenman(record.graph_text);
      GraphOptions options;
      options.allow_cycles = g.allow_cycles;
      rows.push_back(Covariates(record, TreeToGraph(tree, options), tree));
    } catch (const std::exception& e) {
      if (g.strict) throw InputError("line " + std::to_string(line_no) + ": " + e.what());
      spdlog::warn("regress: skipping line {}: {}", line_no, e.what());
      ++skipped;
    }
  }
  const std::vector<CovariateRow> kept =
      f.no_filter ? rows : FilterOutliers(rows, f.outlier_fraction);
  const Design design = CovariateDesign(kept);
  std::vector<double> y;
  for (const CovariateRow& r : kept) y.push_back(r.m_score);

  Json j;
  j["rows"] = rows.size();
  j["skipped"] = skipped;
  j["kept"] = kept.size();
  j["outlier_fraction"] = f.no_filter ? 0.0 : f.outlier_fraction;
  Json pearson = Json::object();
  for (std::size_t k = 0; k < design.columns.size(); ++k) {
    try {
      pearson[design.names[k]] = Pearson(design.columns[k], y);
    } catch (const std::invalid_argument&) {
      pearson[design.names[k]] = nullptr;
    }
  }
  j["pearson_with_m_score"] = pearson;
  try {
    j["full_model"] = FitJson(OlsFit(design, y));
  } catch (const std::invalid_argument& e) {
    j["full_model"] = {{"error", e.what()}};
  }
  if (f.select_bic) {
    const SubsetSelection sel = BestSubsetBic(design, y);
    Json chosen = Json::array();
    for (std::size_t k : sel.chosen) chosen.push_back(design.names[k]);
    j["selection"] = {{"criterion", "bic"},
                      {"chosen", chosen},
                      {"skipped_rank_deficient", sel.skipped_rank_deficient},
                      {"model", FitJson(sel.fit)}};
  }
  Emit(j, f.output, out);
  return kExitOk;
}

// ---------------------------------------------------------------- driver

std::optional<std::uint64_t> SeedFromEnvironment() {
  const char* env = std::getenv("GRAPHLIN_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("GRAPHLIN_SEED is not an unsigned integer: ") + env);
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph linearization, corruption and evaluation toolkit", "graphlin"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Global global;
  std::uint64_t seed_flag = 0;
  auto* seed_opt = app.add_option("--seed", seed_flag, "Base seed (default " +
                                                           std::to_string(kDefaultSeed) +
                                                           ", or $GRAPHLIN_SEED)");
  app.add_option("--jobs", global.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--strict", global.strict, "Abort on the first malformed entry");
  app.add_flag("--allow-cycles", global.allow_cycles, "Accept cyclic graphs with a warning");
  app.add_flag("--quiet", global.quiet, "Only log errors");

  StatsFlags stats;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("--input", stats.input, "AMR file, RDF file or directory")->required();
  stats_cmd->add_option("--format", stats.format, "auto, amr or rdf");
  stats_cmd->add_option("--output", stats.output, "Report path (default stdout)");

  RelinearizeFlags relin;
  auto* relin_cmd = app.add_subcommand("relinearize", "Write relinearized graphs as JSONL");
  relin_cmd->add_option("--input", relin.input)->required();
  relin_cmd->add_option("--output", relin.output)->required();
  relin_cmd->add_option("--strategy", relin.strategy, "canonical, reconfigured or randomized");
  relin_cmd->add_option("--epoch", relin.epoch);

  CorruptFlags corrupt;
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Write masked linearizations as JSONL");
  corrupt_cmd->add_option("--input", corrupt.input)->required();
  corrupt_cmd->add_option("--output", corrupt.output)->required();
  corrupt_cmd->add_option("--strategy", corrupt.strategy, "all, components, nodes or sentence");
  corrupt_cmd->add_option("--linearization", corrupt.linearization);
  corrupt_cmd->add_option("--rate", corrupt.rate);
  corrupt_cmd->add_option("--epoch", corrupt.epoch);

  PairsFlags pairs;
  auto* pairs_cmd = app.add_subcommand("pairs", "Write one task's training pairs as JSONL");
  pairs_cmd->add_option("--input", pairs.input)->required();
  pairs_cmd->add_option("--output", pairs.output)->required();
  pairs_cmd->add_option("--task", pairs.task);
  pairs_cmd->add_option("--strategy", pairs.strategy);
  pairs_cmd->add_option("--format", pairs.format);
  pairs_cmd->add_option("--rate", pairs.rate);
  pairs_cmd->add_option("--epoch", pairs.epoch);

  StreamFlags stream;
  auto* stream_cmd = app.add_subcommand("stream", "Write a task-mixture batch stream as JSONL");
  stream_cmd->add_option("--input", stream.input)->required();
  stream_cmd->add_option("--output", stream.output)->required();
  stream_cmd->add_option("--strategy", stream.strategy);
  stream_cmd->add_option("--format", stream.format);
  stream_cmd->add_option("--scaffold", stream.scaffolds)->delimiter(',');
  stream_cmd->add_option("--q", stream.q);
  stream_cmd->add_option("--epochs", stream.epochs);
  stream_cmd->add_option("--subset", stream.subset, "Keep n entries after a seeded shuffle");
  stream_cmd->add_option("--batch-size", stream.batch_size);
  stream_cmd->add_option("--rate", stream.rate);

  auto* eval_cmd = app.add_subcommand("eval", "Metrics");
  eval_cmd->require_subcommand(1);

  BleuFlags bleu;
  auto* bleu_cmd = eval_cmd->add_subcommand("bleu", "Corpus BLEU");
  bleu_cmd->add_option("--hyp", bleu.hyp)->required();
  bleu_cmd->add_option("--ref", bleu.refs, "One or more reference files")
      ->required()
      ->delimiter(',');
  bleu_cmd->add_option("--output", bleu.output);

  SmatchFlags smatch;
  auto* smatch_cmd = eval_cmd->add_subcommand("smatch", "Smatch between paired AMR files");
  smatch_cmd->add_option("--gold", smatch.gold)->required();
  smatch_cmd->add_option("--pred", smatch.pred)->required();
  smatch_cmd->add_flag("--exact", smatch.exact, "Exhaustive search");
  smatch_cmd->add_option("--restarts", smatch.restarts)->check(CLI::PositiveNumber);
  smatch_cmd->add_option("--output", smatch.output);

  RegressFlags regress;
  auto* regress_cmd = eval_cmd->add_subcommand("regress", "OLS analysis of M-scores");
  regress_cmd->add_option("--rows", regress.rows)->required();
  regress_cmd->add_flag("--select-bic", regress.select_bic);
  regress_cmd->add_flag("--no-filter", regress.no_filter);
  regress_cmd->add_option("--outlier-fraction", regress.outlier_fraction);
  regress_cmd->add_option("--output", regress.output);

  std::vector<const char*> argv = {"graphlin"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    InstallLogger(global.quiet);
    if (seed_opt->count() > 0) {
      global.seed = seed_flag;
    } else if (auto env = SeedFromEnvironment()) {
      global.seed = *env;
    }
    if (*stats_cmd) return RunStats(stats, global, out);
    if (*relin_cmd) return RunRelinearize(relin, global);
    if (*corrupt_cmd) return RunCorrupt(corrupt, global);
    if (*pairs_cmd) return RunPairs(pairs, global);
    if (*stream_cmd) return RunStream(stream, global);
    if (*bleu_cmd) return RunEvalBleu(bleu, out);
    if (*smatch_cmd) return RunEvalSmatch(smatch, global, out);
    if (*regress_cmd) return RunEvalRegress(regress, global, out);
    err << "graphlin: no command\n";
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "graphlin: internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const UsageError& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoScaffolds& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitInput;
  } catch (const PenmanError& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitInput;
  } catch (const GraphError& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitInput;
  } catch (const RdfError& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitInput;
  } catch (const BleuError& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitInput;
  } catch (const MissingField& e) {
    err << "graphlin: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "graphlin: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace graphlin::cli
