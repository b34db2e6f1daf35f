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

#include "graphlin/tree.h"

#include <utility>

namespace graphlin {

std::size_t LinearTree::AddNode(std::string variable, std::string concept_name) {
  nodes_.push_back(TreeNode{std::move(variable), std::move(concept_name), {}});
  return nodes_.size() - 1;
}

std::size_t ReentrancyCount(const LinearTree& tree) {
  std::size_t references = 0;
  for (const TreeNode& node : tree.nodes()) {
    for (const Branch& b : node.branches) {
      if (b.kind == Branch::Kind::kReference) ++references;
    }
  }
  return references;
}

}  // namespace graphlin
