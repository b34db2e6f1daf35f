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

#include "graphlin/relinearize.h"

#include <unordered_map>
#include <utility>
#include <vector>

#include "graphlin/penman.h"

namespace graphlin {
namespace {

struct Incidence {
  std::size_t triple;
  bool outgoing;  // the visiting node is the triple's source
};

class Traversal {
 public:
  Traversal(const AmrGraph& g, Rng& rng) : g_(g), rng_(rng) {
    const auto& triples = g.triples();
    realized_.assign(triples.size(), 0);
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const Triple& t = triples[i];
      switch (t.kind) {
        case TripleKind::kInstance:
          concept_[t.source] = t.target;
          break;
        case TripleKind::kAttribute:
          incident_[t.source].push_back({i, true});
          break;
        case TripleKind::kRelation:
          incident_[t.source].push_back({i, true});
          // A self-loop is traversed once, from its source.
          if (t.target != t.source) incident_[t.target].push_back({i, false});
          break;
      }
    }
  }

  LinearTree Run(const std::string& root) {
    Visit(root);
    return std::move(tree_);
  }

 private:
  std::size_t Visit(const std::string& var) {
    defined_[var] = true;
    const std::size_t index = tree_.AddNode(var, concept_.at(var));
    std::vector<Incidence> order = incident_[var];
    rng_.Shuffle(order);
    for (const Incidence& inc : order) {
      if (realized_[inc.triple]) continue;
      realized_[inc.triple] = 1;
      const Triple& t = g_.triples()[inc.triple];
      Branch b;
      if (t.kind == TripleKind::kAttribute) {
        b.role = t.role;
        b.kind = Branch::Kind::kConstant;
        b.value = t.target;
      } else {
        const std::string& far = inc.outgoing ? t.target : t.source;
        b.role = inc.outgoing ? t.role : InvertRole(t.role);
        if (defined_[far]) {
          b.kind = Branch::Kind::kReference;
          b.value = far;
        } else {
          b.kind = Branch::Kind::kNode;
          b.node = Visit(far);
        }
      }
      tree_.mutable_nodes()[index].branches.push_back(std::move(b));
    }
    return index;
  }

  const AmrGraph& g_;
  Rng& rng_;
  LinearTree tree_;
  std::vector<char> realized_;
  std::unordered_map<std::string, std::string> concept_;
  std::unordered_map<std::string, std::vector<Incidence>> incident_;
  std::unordered_map<std::string, bool> defined_;
};

}  // namespace

const char* LinearizationKindName(LinearizationKind kind) {
  switch (kind) {
    case LinearizationKind::kCanonical: return "canonical";
    case LinearizationKind::kReconfigured: return "reconfigured";
    case LinearizationKind::kRandomized: return "randomized";
  }
  return "?";
}

std::optional<LinearizationKind> ParseLinearizationKind(std::string_view name) {
  if (name == "canonical") return LinearizationKind::kCanonical;
  if (name == "reconfigured" || name == "reconfigure") return LinearizationKind::kReconfigured;
  if (name == "randomized" || name == "randomize") return LinearizationKind::kRandomized;
  return std::nullopt;
}

LinearTree TraverseFrom(const AmrGraph& g, std::string_view root, Rng& rng) {
  return Traversal(g, rng).Run(std::string(root));
}

LinearTree Reconfigure(const AmrGraph& g, Rng& rng) { return TraverseFrom(g, g.top(), rng); }

LinearTree Randomize(const AmrGraph& g, Rng& rng) {
  const std::vector<std::string> vars = g.variables();
  return TraverseFrom(g, vars[rng.UniformIndex(vars.size())], rng);
}

LinearTree Relinearize(const AmrGraph& g, const LinearTree* canonical, LinearizationKind kind,
                       Rng& rng) {
  switch (kind) {
    case LinearizationKind::kCanonical:
      if (canonical == nullptr || canonical->empty()) throw CanonicalUnavailable();
      return *canonical;
    case LinearizationKind::kReconfigured:
      return Reconfigure(g, rng);
    case LinearizationKind::kRandomized:
      return Randomize(g, rng);
  }
  throw CanonicalUnavailable();
}

TokenSeq Linearize(const AmrGraph& g, const LinearTree* canonical, LinearizationKind kind,
                   Rng& rng) {
  return Simplify(Serialize(Relinearize(g, canonical, kind, rng)));
}

}  // namespace graphlin
