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

#ifndef GRAPHLIN_RDF_H_
#define GRAPHLIN_RDF_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphlin/rng.h"
#include "graphlin/token_seq.h"

namespace graphlin {

struct RdfTriple {
  std::string subject;
  std::string predicate;
  std::string object;

  auto operator<=>(const RdfTriple&) const = default;
  bool operator==(const RdfTriple&) const = default;
};

struct RdfEntry {
  std::string id;
  std::vector<RdfTriple> triples;
  std::vector<std::string> references;
  std::string category;
};

class RdfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws RdfError unless the entry has >= 1 triple, >= 1 reference, no empty
// field and no reserved token inside entity or predicate text.
void ValidateRdfEntry(const RdfEntry& entry);

// "fatherOf" -> "father of", "birth_place" -> "birth place".
std::string SplitPredicate(std::string_view predicate);

// Underscores become spaces; surrounding double quotes are dropped.
std::string CleanEntity(std::string_view entity);

// "<rel> <S> subject <V> predicate words <O> object" per triple, in order.
TokenSeq LinearizeRdf(const RdfEntry& entry);

// Uniform permutation of the triples; everything else unchanged.
RdfEntry RandomizeRdf(const RdfEntry& entry, Rng& rng);

// WebNLG release XML (modifiedtripleset / lex). Fields are cleaned.
std::vector<RdfEntry> ReadWebNlgXml(std::istream& in);

// One JSON object per line: {"id"?, "triples": [[s,p,o],...], "refs": [...],
// "category"}. Fields are cleaned.
std::vector<RdfEntry> ReadRdfJsonl(std::istream& in);

// Dispatches on extension: ".xml" is WebNLG XML, anything else JSONL.
std::vector<RdfEntry> LoadRdfCorpus(const std::filesystem::path& path);

}  // namespace graphlin

#endif  // GRAPHLIN_RDF_H_
