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

#ifndef GRAPHLIN_SMATCH_H_
#define GRAPHLIN_SMATCH_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphlin/graph.h"
#include "graphlin/rng.h"

namespace graphlin {

struct SmatchResult {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  std::size_t matched = 0;
  std::size_t left_total = 0;   // triples of the first graph, top included
  std::size_t right_total = 0;  // triples of the second graph, top included
  // (first-graph variable, second-graph variable) pairs; unmapped omitted.
  std::vector<std::pair<std::string, std::string>> mapping;
};

class SmatchTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Variable limit of SmatchExact (on the smaller graph).
inline constexpr std::size_t kSmatchExactLimit = 8;

// Hill-climbing over one-to-one variable mappings: single reassignments and
// swaps, then moves aligning both ends of a relation. The first start maps
// variables by concept agreement, the remaining `restarts - 1` are random.
// Counts instance, relation, attribute and top triples; the top triple carries
// the concept of the top, so it matches only between tops of equal concept.
SmatchResult Smatch(const AmrGraph& left, const AmrGraph& right, Rng& rng,
                    std::size_t restarts = 4);

// Exhaustive branch-and-bound over injective mappings; the true optimum.
// Throws SmatchTooLarge when both graphs exceed kSmatchExactLimit variables.
SmatchResult SmatchExact(const AmrGraph& left, const AmrGraph& right);

}  // namespace graphlin

#endif  // GRAPHLIN_SMATCH_H_
