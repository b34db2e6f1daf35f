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

#ifndef GRAPHLIN_CORPUS_H_
#define GRAPHLIN_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlin/graph.h"
#include "graphlin/tree.h"

namespace graphlin {

// One block of an AMR release file: "# ::id", "# ::snt" and the graph text.
struct AmrRecord {
  std::string id;
  std::string sentence;
  std::string graph_text;
  std::size_t line = 0;  // first line of the block
};

// Blocks are separated by blank lines. Blocks without an "::id" get
// "<prefix>N" (1-based ordinal among blocks).
std::vector<AmrRecord> ReadAmrRecords(std::istream& in, const std::string& id_prefix = "amr");

struct AmrExample {
  std::string id;
  std::string sentence;
  LinearTree tree;  // canonical, as annotated
  AmrGraph graph;
};

struct LoadFailure {
  std::string id;
  std::size_t line = 0;
  std::string message;
};

struct AmrCorpus {
  std::vector<AmrExample> examples;
  std::vector<LoadFailure> failures;
  std::size_t alignments_stripped = 0;
};

struct LoadOptions {
  GraphOptions graph;
  // Throw on the first malformed entry instead of skipping it.
  bool strict = false;
};

// Parses every record. Malformed entries are skipped and reported in
// `failures` unless `strict`.
AmrCorpus ParseAmrRecords(const std::vector<AmrRecord>& records, const LoadOptions& options = {});

AmrCorpus LoadAmrCorpus(const std::filesystem::path& path, const LoadOptions& options = {});

// Writes examples back in release-file layout.
void WriteAmrCorpus(std::ostream& out, const std::vector<AmrExample>& examples);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphlin

#endif  // GRAPHLIN_CORPUS_H_
