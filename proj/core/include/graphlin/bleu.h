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

#ifndef GRAPHLIN_BLEU_H_
#define GRAPHLIN_BLEU_H_

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graphlin {

inline constexpr int kBleuOrder = 4;

// mteval-v13a tokenization: unescapes the four common HTML entities, splits
// off punctuation and symbols, keeps decimal points and thousands separators
// between digits, splits a dash after a digit.
std::vector<std::string> Tokenize13a(std::string_view line);

// Clipped n-gram statistics of one segment (or a sum of segments).
struct BleuStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

// Hypothesis n-grams are clipped by their maximum count in any reference.
// The effective reference length is the closest one (shorter on ties).
BleuStats SegmentStats(const std::vector<std::string>& hypothesis,
                       const std::vector<std::vector<std::string>>& references);

struct BleuReport {
  double score = 0.0;  // 0..100
  std::array<double, kBleuOrder> precisions{};  // percentages
  double brevity_penalty = 0.0;
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;
  std::string signature;
};

enum class BleuSmoothing { kNone, kAddOne };

// score = BP * exp(mean log p_n) * 100 with BP = exp(1 - r/c) when c < r.
// Without smoothing any zero precision gives 0; with add-one every order
// uses (m + 1) / (t + 1).
BleuReport ComputeBleu(const BleuStats& stats, BleuSmoothing smoothing);

class BleuError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// references[i] holds every reference of hypotheses[i]. Case-sensitive,
// 13a-tokenized, unsmoothed. Throws BleuError on a length mismatch, an empty
// corpus or a hypothesis without references.
BleuReport CorpusBleu(const std::vector<std::string>& hypotheses,
                      const std::vector<std::vector<std::string>>& references);

// Add-one smoothed BLEU of one hypothesis, 0..100.
double SentenceBleu(const std::string& hypothesis, const std::vector<std::string>& references);

}  // namespace graphlin

#endif  // GRAPHLIN_BLEU_H_
