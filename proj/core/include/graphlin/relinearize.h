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

#ifndef GRAPHLIN_RELINEARIZE_H_
#define GRAPHLIN_RELINEARIZE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graphlin/graph.h"
#include "graphlin/rng.h"
#include "graphlin/token_seq.h"
#include "graphlin/tree.h"

namespace graphlin {

enum class LinearizationKind { kCanonical, kReconfigured, kRandomized };

const char* LinearizationKindName(LinearizationKind kind);
std::optional<LinearizationKind> ParseLinearizationKind(std::string_view name);

struct LinearizationStrategy {
  LinearizationKind kind = LinearizationKind::kCanonical;
  std::uint64_t seed = 0;
};

class CanonicalUnavailable : public std::runtime_error {
 public:
  CanonicalUnavailable() : std::runtime_error("CanonicalUnavailable: no canonical tree") {}
};

// Depth-first spanning tree rooted at `root`. At every node the incident
// triples (both orientations) are visited in shuffled order; a relation
// whose far end is already defined becomes a reference, and relations
// traversed target-to-source get an inverted surface role. Attributes stay
// at their source node.
LinearTree TraverseFrom(const AmrGraph& g, std::string_view root, Rng& rng);

// Tree rooted at g.top(); canonical order ignored.
LinearTree Reconfigure(const AmrGraph& g, Rng& rng);

// Tree rooted at a variable drawn uniformly at random.
LinearTree Randomize(const AmrGraph& g, Rng& rng);

// The tree a strategy presents. Throws CanonicalUnavailable when the
// canonical tree is requested but absent.
LinearTree Relinearize(const AmrGraph& g, const LinearTree* canonical, LinearizationKind kind,
                       Rng& rng);

// Relinearize, then Serialize and Simplify.
TokenSeq Linearize(const AmrGraph& g, const LinearTree* canonical, LinearizationKind kind,
                   Rng& rng);

}  // namespace graphlin

#endif  // GRAPHLIN_RELINEARIZE_H_
