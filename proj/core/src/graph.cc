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

#include "graphlin/graph.h"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include <spdlog/spdlog.h>

namespace graphlin {
namespace {

constexpr std::string_view kInverseSuffix = "-of";

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

bool IsInvertedRole(std::string_view label, const RoleExceptions& exceptions) {
  // A bare ":-of" is not an inversion of anything.
  if (label.size() <= kInverseSuffix.size() + 1) return false;
  if (!EndsWith(label, kInverseSuffix)) return false;
  return exceptions.find(label) == exceptions.end();
}

std::string InvertRole(std::string_view label, const RoleExceptions& exceptions) {
  if (IsInvertedRole(label, exceptions)) {
    return std::string(label.substr(0, label.size() - kInverseSuffix.size()));
  }
  return std::string(label) + std::string(kInverseSuffix);
}

bool IsValidVariable(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (c == '/' || c == '(' || c == ')' || c == ':' || c == '"' ||
        static_cast<unsigned char>(c) <= ' ') {
      return false;
    }
  }
  return true;
}

const char* TripleKindName(TripleKind kind) {
  switch (kind) {
    case TripleKind::kInstance: return "instance";
    case TripleKind::kRelation: return "relation";
    case TripleKind::kAttribute: return "attribute";
  }
  return "?";
}

Triple Triple::Instance(std::string var, std::string concept_name) {
  return {TripleKind::kInstance, std::move(var), "/", std::move(concept_name)};
}

Triple Triple::Relation(std::string source, std::string role, std::string target) {
  return {TripleKind::kRelation, std::move(source), std::move(role), std::move(target)};
}

Triple Triple::Attribute(std::string source, std::string role, std::string constant) {
  return {TripleKind::kAttribute, std::move(source), std::move(role), std::move(constant)};
}

const char* GraphErrorCodeName(GraphErrorCode code) {
  switch (code) {
    case GraphErrorCode::kDisconnected: return "Disconnected";
    case GraphErrorCode::kCyclic: return "Cyclic";
    case GraphErrorCode::kMissingInstance: return "MissingInstance";
    case GraphErrorCode::kNoTop: return "NoTop";
    case GraphErrorCode::kDuplicateInstance: return "DuplicateInstance";
    case GraphErrorCode::kInvalidVariable: return "InvalidVariable";
  }
  return "?";
}

GraphError::GraphError(GraphErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(GraphErrorCodeName(code)) + ": " + detail), code_(code) {}

std::vector<std::string> AmrGraph::variables() const {
  std::vector<std::string> vars;
  for (const Triple& t : triples_) {
    if (t.kind == TripleKind::kInstance) vars.push_back(t.source);
  }
  return vars;
}

std::size_t AmrGraph::variable_count() const {
  return static_cast<std::size_t>(std::count_if(
      triples_.begin(), triples_.end(),
      [](const Triple& t) { return t.kind == TripleKind::kInstance; }));
}

const std::string* AmrGraph::ConceptOf(std::string_view var) const {
  for (const Triple& t : triples_) {
    if (t.kind == TripleKind::kInstance && t.source == var) return &t.target;
  }
  return nullptr;
}

std::vector<Triple> AmrGraph::SortedTriples() const {
  std::vector<Triple> sorted = triples_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

AmrGraph AmrGraph::WithTop(std::string top) const {
  if (ConceptOf(top) == nullptr) {
    throw GraphError(GraphErrorCode::kNoTop, "'" + top + "' is not a variable");
  }
  AmrGraph g = *this;
  g.top_ = std::move(top);
  return g;
}

bool operator==(const AmrGraph& a, const AmrGraph& b) {
  return a.top_ == b.top_ && SameTriples(a, b);
}

bool SameTriples(const AmrGraph& a, const AmrGraph& b) {
  if (a.triples().size() != b.triples().size()) return false;
  return a.SortedTriples() == b.SortedTriples();
}

AmrGraph GraphFromTriples(std::vector<Triple> triples, std::string top,
                          const GraphOptions& options) {
  // Normalize orientation and index instances.
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> names;
  for (Triple& t : triples) {
    if (!IsValidVariable(t.source)) {
      throw GraphError(GraphErrorCode::kInvalidVariable, "'" + t.source + "'");
    }
    if (t.kind == TripleKind::kInstance) {
      t.role = "/";
      if (!index.emplace(t.source, names.size()).second) {
        throw GraphError(GraphErrorCode::kDuplicateInstance, "variable '" + t.source + "'");
      }
      names.push_back(t.source);
    } else if (t.kind == TripleKind::kRelation) {
      if (!IsValidVariable(t.target)) {
        throw GraphError(GraphErrorCode::kInvalidVariable, "'" + t.target + "'");
      }
      if (IsInvertedRole(t.role, options.role_exceptions)) {
        t.role = InvertRole(t.role, options.role_exceptions);
        std::swap(t.source, t.target);
      }
    }
  }
  for (const Triple& t : triples) {
    if (t.kind == TripleKind::kInstance) continue;
    if (!index.count(t.source)) {
      throw GraphError(GraphErrorCode::kMissingInstance, "variable '" + t.source + "'");
    }
    if (t.kind == TripleKind::kRelation && !index.count(t.target)) {
      throw GraphError(GraphErrorCode::kMissingInstance, "variable '" + t.target + "'");
    }
  }
  if (!index.count(top)) {
    throw GraphError(GraphErrorCode::kNoTop, "'" + top + "' has no instance");
  }

  const std::size_t n = names.size();
  std::vector<std::vector<std::size_t>> out(n), undirected(n);
  for (const Triple& t : triples) {
    if (t.kind != TripleKind::kRelation) continue;
    std::size_t s = index[t.source], d = index[t.target];
    out[s].push_back(d);
    undirected[s].push_back(d);
    undirected[d].push_back(s);
  }

  // Connectivity from the top over the undirected view.
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{index[top]};
  seen[index[top]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : undirected[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i]) {
        throw GraphError(GraphErrorCode::kDisconnected,
                         "'" + names[i] + "' unreachable from top '" + top + "'");
      }
    }
  }

  // Kahn's algorithm on the normalized directed view.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : out[v]) ++indegree[w];
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (removed != n) {
    if (!options.allow_cycles) {
      throw GraphError(GraphErrorCode::kCyclic, "directed cycle below top '" + top + "'");
    }
    spdlog::warn("graph with top '{}' contains a directed cycle", top);
  }

  AmrGraph g;
  g.triples_ = std::move(triples);
  g.top_ = std::move(top);
  return g;
}

std::size_t EdgeCount(const AmrGraph& g) {
  return g.triples().size() - g.variable_count();
}

std::size_t InDegree(const AmrGraph& g, std::string_view var) {
  return static_cast<std::size_t>(std::count_if(
      g.triples().begin(), g.triples().end(), [&](const Triple& t) {
        return t.kind == TripleKind::kRelation && t.target == var;
      }));
}

}  // namespace graphlin
