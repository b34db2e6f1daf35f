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

#ifndef GRAPHLIN_REGRESSION_H_
#define GRAPHLIN_REGRESSION_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlin/graph.h"
#include "graphlin/tree.h"

namespace graphlin {

class DegenerateVariance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Product-moment correlation. Throws std::invalid_argument for unequal
// lengths or fewer than 3 points, DegenerateVariance for a constant input.
double Pearson(const std::vector<double>& x, const std::vector<double>& y);

// Column-major design: columns[k][i] is covariate k of row i. The intercept
// is implicit.
struct Design {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  Design Select(const std::vector<std::size_t>& which) const;
};

struct RegressionResult {
  std::vector<std::string> names;      // "intercept" first
  std::vector<double> coefficients;    // aligned with names
  std::vector<double> standard_errors;
  double rss = 0.0;
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  // n ln(RSS / n) + k ln n with k = covariates + 2.
  double bic = 0.0;
  std::size_t n = 0;
};

class RankDeficient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooFewRows : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ordinary least squares with intercept, solved from the normal equations.
// Throws TooFewRows unless n > p + 1 and RankDeficient for collinear
// columns.
RegressionResult OlsFit(const Design& x, const std::vector<double>& y);

struct SubsetSelection {
  std::vector<std::size_t> chosen;  // indices into the candidate design
  RegressionResult fit;
  std::size_t skipped_rank_deficient = 0;
  // Lowest-BIC subset of each size (index = size); empty when every subset
  // of that size was rank deficient.
  std::vector<std::vector<std::size_t>> best_by_size;
};

// Exhaustive search over all 2^p subsets (p <= 20) for the minimum BIC;
// ties go to fewer covariates.
SubsetSelection BestSubsetBic(const Design& candidates, const std::vector<double>& y);

// Per-sentence analysis record, as written by a trainer's evaluation pass.
struct AnalysisRecord {
  std::string id;
  std::string graph_text;  // gold PENMAN
  std::string target;      // reference sentence
  std::string prediction;  // generated sentence
  double scaffold_loss = 0.0;
  double generation_loss = 0.0;
  double m_score = 0.0;
};

class MissingField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One JSON object per line with "id", "amr", "target", "prediction",
// "scaffold_loss", "generation_loss" and either "m_score" or "pred_amr"
// (the graph parsed from the prediction; the M-score is then its smatch F
// against "amr"). Throws MissingField.
AnalysisRecord ParseAnalysisRecord(const std::string& json_line);

// Covariate order of CovariateRow::values.
inline constexpr const char* kCovariateNames[] = {
    "log_scaffold_loss", "log_generation_loss", "bleu_over_100",
    "edges",             "reentrancies",        "target_words",
};
inline constexpr std::size_t kCovariateCount = 6;

struct CovariateRow {
  std::string id;
  double values[kCovariateCount] = {};
  double m_score = 0.0;
};

// Losses must be positive (they enter in log space).
CovariateRow Covariates(const AnalysisRecord& record, const AmrGraph& graph,
                        const LinearTree& canonical);

// Drops the bottom ceil(0.5%) of target lengths and M-scores and the top
// ceil(0.5%) of both losses, each criterion ranked over the full input.
// Returns the kept rows in input order.
std::vector<CovariateRow> FilterOutliers(const std::vector<CovariateRow>& rows,
                                         double fraction = 0.005);

// ceil(fraction * n) as used by FilterOutliers.
std::size_t OutlierCount(std::size_t n, double fraction = 0.005);

Design CovariateDesign(const std::vector<CovariateRow>& rows);

}  // namespace graphlin

#endif  // GRAPHLIN_REGRESSION_H_
