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

#ifndef GRAPHLIN_PENMAN_H_
#define GRAPHLIN_PENMAN_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graphlin/graph.h"
#include "graphlin/token_seq.h"
#include "graphlin/tree.h"

namespace graphlin {

class PenmanError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kDuplicateDefinition, kDanglingReference };

  PenmanError(Kind kind, std::size_t line, std::size_t column, std::string message);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

const char* PenmanErrorKindName(PenmanError::Kind kind);

struct ParseStats {
  // Alignment markers such as "~e.3" removed from the input.
  std::size_t alignments_stripped = 0;
};

// Parses one PENMAN graph. Branch order and surface role orientation are
// kept exactly as written. References may precede the definition they refer
// to. An unquoted symbol after a role resolves to a reference when it names
// a defined variable; if it merely looks like a variable (a letter followed
// by digits) it is a DanglingReference, otherwise a constant.
LinearTree ParsePenman(std::string_view text, ParseStats* stats = nullptr);

// Normalized graph of the tree's triples with top = root variable.
AmrGraph TreeToGraph(const LinearTree& tree, const GraphOptions& options = {});

// "( var / concept role child ... )" with every parenthesis a separate token.
TokenSeq Serialize(const LinearTree& tree);

// Indented multi-line PENMAN, the layout used in corpus files.
std::string FormatPenman(const LinearTree& tree);

// Removes one trailing "-NN" sense suffix: "dream-01" -> "dream".
std::string StripSense(std::string_view concept_name);

// Model-input form of a serialized tree: "var / concept" becomes the
// sense-stripped concept, references become their concept, parentheses and
// roles stay.
TokenSeq Simplify(const TokenSeq& seq);

}  // namespace graphlin

#endif  // GRAPHLIN_PENMAN_H_
