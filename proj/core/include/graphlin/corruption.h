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

#ifndef GRAPHLIN_CORRUPTION_H_
#define GRAPHLIN_CORRUPTION_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphlin/rng.h"
#include "graphlin/token_seq.h"

namespace graphlin {

enum class TokenClass { kComponent, kNode, kSentence };

enum class MaskTarget { kAllGraphTokens, kComponentsOnly, kNodesOnly, kSentenceTokens };

const char* MaskTargetName(MaskTarget target);
std::optional<MaskTarget> ParseMaskTarget(std::string_view name);

struct MaskStrategy {
  MaskTarget target = MaskTarget::kAllGraphTokens;
  // Expected fraction of all tokens to mask; in (0, 1).
  double global_rate = 0.15;
  std::string mask_token = std::string(kMaskToken);
};

struct CorruptionPair {
  TokenSeq input;   // with masks
  TokenSeq target;  // the original sequence
  std::size_t masked = 0;
  // Per-token masking probability actually used.
  double probability = 0.0;
};

class EmptyClass : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph sequences: '(' ')' '/' and role labels are components, everything
// else is a node.
std::vector<TokenClass> ClassifyTokens(const TokenSeq& seq);

// Every token of a surface sentence is a sentence token.
std::vector<TokenClass> ClassifySentence(const TokenSeq& seq);

// min(1, rate * |seq| / |class|).
double MaskProbability(double global_rate, std::size_t seq_size, std::size_t class_size);

// Each token of the target class is replaced by the mask token independently
// with MaskProbability. Throws EmptyClass when no token is eligible and
// std::invalid_argument for an empty sequence or a rate outside (0, 1).
CorruptionPair Mask(const TokenSeq& seq, const MaskStrategy& strategy, Rng& rng);

// Token-substitution masking of a surface sentence at `rate`.
CorruptionPair SentenceMlm(const TokenSeq& sentence, Rng& rng, double rate = 0.15);

}  // namespace graphlin

#endif  // GRAPHLIN_CORRUPTION_H_
