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

#include "graphlin/corruption.h"

#include <algorithm>

namespace graphlin {
namespace {

bool InClass(MaskTarget target, TokenClass c) {
  switch (target) {
    case MaskTarget::kAllGraphTokens: return c != TokenClass::kSentence;
    case MaskTarget::kComponentsOnly: return c == TokenClass::kComponent;
    case MaskTarget::kNodesOnly: return c == TokenClass::kNode;
    case MaskTarget::kSentenceTokens: return c == TokenClass::kSentence;
  }
  return false;
}

}  // namespace

const char* MaskTargetName(MaskTarget target) {
  switch (target) {
    case MaskTarget::kAllGraphTokens: return "all";
    case MaskTarget::kComponentsOnly: return "components";
    case MaskTarget::kNodesOnly: return "nodes";
    case MaskTarget::kSentenceTokens: return "sentence";
  }
  return "?";
}

std::optional<MaskTarget> ParseMaskTarget(std::string_view name) {
  if (name == "all") return MaskTarget::kAllGraphTokens;
  if (name == "components") return MaskTarget::kComponentsOnly;
  if (name == "nodes") return MaskTarget::kNodesOnly;
  if (name == "sentence") return MaskTarget::kSentenceTokens;
  return std::nullopt;
}

std::vector<TokenClass> ClassifyTokens(const TokenSeq& seq) {
  std::vector<TokenClass> classes;
  classes.reserve(seq.size());
  for (const std::string& t : seq.tokens) {
    const bool component =
        t == "(" || t == ")" || t == "/" || (t.size() > 1 && t[0] == ':');
    classes.push_back(component ? TokenClass::kComponent : TokenClass::kNode);
  }
  return classes;
}

std::vector<TokenClass> ClassifySentence(const TokenSeq& seq) {
  return std::vector<TokenClass>(seq.size(), TokenClass::kSentence);
}

double MaskProbability(double global_rate, std::size_t seq_size, std::size_t class_size) {
  if (class_size == 0) return 0.0;
  return std::min(1.0, global_rate * static_cast<double>(seq_size) /
                           static_cast<double>(class_size));
}

CorruptionPair Mask(const TokenSeq& seq, const MaskStrategy& strategy, Rng& rng) {
  if (seq.empty()) throw std::invalid_argument("cannot mask an empty sequence");
  if (!(strategy.global_rate > 0.0 && strategy.global_rate < 1.0)) {
    throw std::invalid_argument("mask rate must lie in (0, 1)");
  }
  const std::vector<TokenClass> classes = strategy.target == MaskTarget::kSentenceTokens
                                              ? ClassifySentence(seq)
                                              : ClassifyTokens(seq);
  const std::size_t eligible = static_cast<std::size_t>(std::count_if(
      classes.begin(), classes.end(), [&](TokenClass c) { return InClass(strategy.target, c); }));
  if (eligible == 0) {
    throw EmptyClass(std::string("EmptyClass: no ") + MaskTargetName(strategy.target) +
                     " tokens in sequence");
  }
  CorruptionPair pair;
  pair.target = seq;
  pair.input = seq;
  pair.probability = MaskProbability(strategy.global_rate, seq.size(), eligible);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!InClass(strategy.target, classes[i])) continue;
    if (rng.Bernoulli(pair.probability)) {
      pair.input.tokens[i] = strategy.mask_token;
      ++pair.masked;
    }
  }
  return pair;
}

CorruptionPair SentenceMlm(const TokenSeq& sentence, Rng& rng, double rate) {
  MaskStrategy strategy;
  strategy.target = MaskTarget::kSentenceTokens;
  strategy.global_rate = rate;
  return Mask(sentence, strategy, rng);
}

}  // namespace graphlin
