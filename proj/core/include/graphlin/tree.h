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

#ifndef GRAPHLIN_TREE_H_
#define GRAPHLIN_TREE_H_

#include <cstddef>
#include <string>
#include <vector>

namespace graphlin {

// One outgoing branch of a tree node. The role is the surface role as
// written, so it may be inverted (":ARG0-of").
struct Branch {
  enum class Kind { kNode, kReference, kConstant };

  std::string role;
  Kind kind = Kind::kConstant;
  std::size_t node = 0;  // index into LinearTree::nodes() for kNode
  std::string value;     // referenced variable or constant text

  bool operator==(const Branch&) const = default;
};

// A concept-bearing node: the single defining mention of its variable.
struct TreeNode {
  std::string variable;
  std::string concept_name;
  std::vector<Branch> branches;

  bool operator==(const TreeNode&) const = default;
};

// An ordered spanning-tree arrangement of a graph. Nodes are stored in
// pre-order with the root at index 0.
class LinearTree {
 public:
  LinearTree() = default;
  explicit LinearTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::vector<TreeNode>& mutable_nodes() { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  bool empty() const { return nodes_.empty(); }

  // Appends a node and returns its index.
  std::size_t AddNode(std::string variable, std::string concept_name);

  bool operator==(const LinearTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

// Number of reference mentions: total variable mentions minus distinct
// variables.
std::size_t ReentrancyCount(const LinearTree& tree);

}  // namespace graphlin

#endif  // GRAPHLIN_TREE_H_
