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

#ifndef GRAPHLIN_GRAPH_H_
#define GRAPHLIN_GRAPH_H_

#include <cstddef>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graphlin {

// Role labels that end in "-of" but are not inversions (e.g. ":consist-of").
using RoleExceptions = std::set<std::string, std::less<>>;

// True iff `label` is an inverted role (":X-of") and is not listed as an
// exception.
bool IsInvertedRole(std::string_view label, const RoleExceptions& exceptions = {});

// ":X" <-> ":X-of". Involutive on labels that do not end in "-of-of".
std::string InvertRole(std::string_view label, const RoleExceptions& exceptions = {});

// Variables are short identifiers without whitespace, '/', '(', ')' or ':'.
bool IsValidVariable(std::string_view name);

enum class TripleKind { kInstance, kRelation, kAttribute };

const char* TripleKindName(TripleKind kind);

// One instance, relation or attribute triple. Instances carry the reserved
// role "/" and the concept in `target`; attributes carry a constant there,
// kept verbatim (quotes included).
struct Triple {
  TripleKind kind = TripleKind::kInstance;
  std::string source;
  std::string role;
  std::string target;

  static Triple Instance(std::string var, std::string concept_name);
  static Triple Relation(std::string source, std::string role, std::string target);
  static Triple Attribute(std::string source, std::string role, std::string constant);

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

enum class GraphErrorCode {
  kDisconnected,
  kCyclic,
  kMissingInstance,
  kNoTop,
  kDuplicateInstance,
  kInvalidVariable,
};

const char* GraphErrorCodeName(GraphErrorCode code);

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorCode code, const std::string& detail);
  GraphErrorCode code() const { return code_; }

 private:
  GraphErrorCode code_;
};

struct GraphOptions {
  // Downgrades kCyclic to a logged warning.
  bool allow_cycles = false;
  RoleExceptions role_exceptions;
};

// A validated rooted graph. Relation triples are stored in normalized
// orientation (non-inverted role), so two graphs are equal exactly when
// their triple multisets and tops agree.
class AmrGraph {
 public:
  const std::vector<Triple>& triples() const { return triples_; }
  const std::string& top() const { return top_; }

  // Variables in order of their instance triples.
  std::vector<std::string> variables() const;
  std::size_t variable_count() const;

  // Concept bound to `var`, or nullptr.
  const std::string* ConceptOf(std::string_view var) const;

  // Triples sorted; the canonical multiset form.
  std::vector<Triple> SortedTriples() const;

  // Same graph with a different top. `top` must be a variable of the graph.
  AmrGraph WithTop(std::string top) const;

  friend bool operator==(const AmrGraph& a, const AmrGraph& b);

 private:
  friend AmrGraph GraphFromTriples(std::vector<Triple>, std::string, const GraphOptions&);

  std::vector<Triple> triples_;
  std::string top_;
};

// Equal triple multisets, top ignored.
bool SameTriples(const AmrGraph& a, const AmrGraph& b);

// Validates and normalizes. Throws GraphError.
AmrGraph GraphFromTriples(std::vector<Triple> triples, std::string top,
                          const GraphOptions& options = {});

// Number of relation + attribute triples.
std::size_t EdgeCount(const AmrGraph& g);

// Number of relation triples whose target is `var` (normalized orientation).
std::size_t InDegree(const AmrGraph& g, std::string_view var);

}  // namespace graphlin

#endif  // GRAPHLIN_GRAPH_H_
