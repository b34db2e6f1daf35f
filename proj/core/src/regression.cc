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

#include "graphlin/regression.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

#include "json.hpp"

#include "graphlin/bleu.h"
#include "graphlin/penman.h"
#include "graphlin/rng.h"
#include "graphlin/smatch.h"
#include "graphlin/token_seq.h"

namespace graphlin {
namespace {

// Relative eigenvalue floor of X'X below which the design is singular.
constexpr double kRankTolerance = 1e-12;

bool BicLess(double a, std::size_t size_a, double b, std::size_t size_b) {
  const double tol = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= tol) return size_a < size_b;
  return a < b;
}

}  // namespace

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: unequal lengths");
  if (x.size() < 3) throw std::invalid_argument("pearson: need at least 3 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateVariance("DegenerateVariance: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Design Design::Select(const std::vector<std::size_t>& which) const {
  Design d;
  for (std::size_t k : which) {
    d.names.push_back(names.at(k));
    d.columns.push_back(columns.at(k));
  }
  return d;
}

RegressionResult OlsFit(const Design& x, const std::vector<double>& y) {
  const std::size_t n = y.size();
  const std::size_t p = x.columns.size();
  for (const auto& col : x.columns) {
    if (col.size() != n) throw std::invalid_argument("ols: column length differs from y");
  }
  if (n <= p + 1) {
    throw TooFewRows("TooFewRows: " + std::to_string(n) + " rows for " + std::to_string(p) +
                     " covariates");
  }
  Eigen::MatrixXd design(n, p + 1);
  Eigen::VectorXd response(n);
  for (std::size_t i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    for (std::size_t k = 0; k < p; ++k) design(i, k + 1) = x.columns[k][i];
    response(i) = y[i];
  }
  const Eigen::MatrixXd gram = design.transpose() * design;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double max_ev = eig.eigenvalues().maxCoeff();
  if (!(eig.eigenvalues().minCoeff() > kRankTolerance * max_ev)) {
    throw RankDeficient("RankDeficient: design columns are collinear");
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const Eigen::VectorXd beta = ldlt.solve(design.transpose() * response);
  const Eigen::VectorXd residual = response - design * beta;
  const Eigen::MatrixXd inverse =
      ldlt.solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p + 1),
                                           static_cast<Eigen::Index>(p + 1)));

  RegressionResult r;
  r.n = n;
  r.rss = residual.squaredNorm();
  const double mean = response.mean();
  const double tss = (response.array() - mean).square().sum();
  const double dof = static_cast<double>(n - p - 1);
  const double sigma2 = r.rss / dof;
  r.r_squared = tss > 0.0 ? 1.0 - r.rss / tss : 1.0;
  r.adjusted_r_squared =
      1.0 - (1.0 - r.r_squared) * static_cast<double>(n - 1) / dof;
  const double dn = static_cast<double>(n);
  r.bic = (r.rss > 0.0 ? dn * std::log(r.rss / dn) : -std::numeric_limits<double>::infinity()) +
          static_cast<double>(p + 2) * std::log(dn);
  r.names.push_back("intercept");
  r.names.insert(r.names.end(), x.names.begin(), x.names.end());
  for (std::size_t k = 0; k <= p; ++k) {
    r.coefficients.push_back(beta(static_cast<Eigen::Index>(k)));
    r.standard_errors.push_back(
        std::sqrt(sigma2 * inverse(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k))));
  }
  return r;
}

SubsetSelection BestSubsetBic(const Design& candidates, const std::vector<double>& y) {
  const std::size_t p = candidates.columns.size();
  if (p > 20) throw std::invalid_argument("best subset search is limited to 20 candidates");
  SubsetSelection out;
  out.best_by_size.resize(p + 1);
  std::vector<double> size_bic(p + 1, std::numeric_limits<double>::infinity());
  bool have = false;
  double best_bic = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < p; ++k) {
      if (mask & (1u << k)) subset.push_back(k);
    }
    RegressionResult fit;
    try {
      fit = OlsFit(candidates.Select(subset), y);
    } catch (const RankDeficient&) {
      spdlog::debug("skipping rank-deficient subset {:#x}", mask);
      ++out.skipped_rank_deficient;
      continue;
    }
    if (fit.bic < size_bic[subset.size()]) {
      size_bic[subset.size()] = fit.bic;
      out.best_by_size[subset.size()] = subset;
    }
    if (!have || BicLess(fit.bic, subset.size(), best_bic, out.chosen.size())) {
      have = true;
      best_bic = fit.bic;
      out.chosen = subset;
      out.fit = std::move(fit);
    }
  }
  if (!have) throw RankDeficient("RankDeficient: no subset could be fitted");
  if (out.skipped_rank_deficient > 0) {
    spdlog::warn("skipped {} rank-deficient subset(s)", out.skipped_rank_deficient);
  }
  return out;
}

AnalysisRecord ParseAnalysisRecord(const std::string& json_line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_line);
  } catch (const nlohmann::json::exception& e) {
    throw MissingField(std::string("malformed record: ") + e.what());
  }
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw MissingField(std::string("MissingField: ") + key);
    return j.at(key);
  };
  AnalysisRecord r;
  try {
    r.id = need("id").get<std::string>();
    r.graph_text = need("amr").get<std::string>();
    r.target = need("target").get<std::string>();
    r.prediction = need("prediction").get<std::string>();
    r.scaffold_loss = need("scaffold_loss").get<double>();
    r.generation_loss = need("generation_loss").get<double>();
    if (j.contains("m_score")) {
      r.m_score = j.at("m_score").get<double>();
    } else if (j.contains("pred_amr")) {
      const AmrGraph gold = TreeToGraph(ParsePenman(r.graph_text));
      const AmrGraph pred = TreeToGraph(ParsePenman(j.at("pred_amr").get<std::string>()));
      if (std::min(gold.variable_count(), pred.variable_count()) <= kSmatchExactLimit) {
        r.m_score = SmatchExact(gold, pred).f_score;
      } else {
        Rng rng(DeriveSeed(0, r.id));
        r.m_score = Smatch(gold, pred, rng).f_score;
      }
    } else {
      throw MissingField("MissingField: m_score or pred_amr");
    }
  } catch (const nlohmann::json::exception& e) {
    throw MissingField(std::string("bad field type: ") + e.what());
  }
  return r;
}

CovariateRow Covariates(const AnalysisRecord& record, const AmrGraph& graph,
                        const LinearTree& canonical) {
  if (!(record.scaffold_loss > 0.0) || !(record.generation_loss > 0.0)) {
    throw std::invalid_argument("losses must be positive for " + record.id);
  }
  CovariateRow row;
  row.id = record.id;
  row.values[0] = std::log(record.scaffold_loss);
  row.values[1] = std::log(record.generation_loss);
  row.values[2] = SentenceBleu(record.prediction, {record.target}) / 100.0;
  row.values[3] = static_cast<double>(EdgeCount(graph));
  row.values[4] = static_cast<double>(ReentrancyCount(canonical));
  row.values[5] = static_cast<double>(TokenSeq::Split(record.target).size());
  row.m_score = record.m_score;
  return row;
}

std::size_t OutlierCount(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

std::vector<CovariateRow> FilterOutliers(const std::vector<CovariateRow>& rows, double fraction) {
  const std::size_t n = rows.size();
  const std::size_t k = OutlierCount(n, fraction);
  std::vector<char> drop(n, 0);
  auto mark = [&](auto value, bool bottom) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return bottom ? value(rows[a]) < value(rows[b]) : value(rows[a]) > value(rows[b]);
    });
    for (std::size_t i = 0; i < k && i < n; ++i) drop[order[i]] = 1;
  };
  mark([](const CovariateRow& r) { return r.values[5]; }, true);
  mark([](const CovariateRow& r) { return r.m_score; }, true);
  mark([](const CovariateRow& r) { return r.values[0]; }, false);
  mark([](const CovariateRow& r) { return r.values[1]; }, false);
  std::vector<CovariateRow> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!drop[i]) kept.push_back(rows[i]);
  }
  return kept;
}

Design CovariateDesign(const std::vector<CovariateRow>& rows) {
  Design d;
  for (std::size_t k = 0; k < kCovariateCount; ++k) {
    d.names.emplace_back(kCovariateNames[k]);
    std::vector<double> col;
    col.reserve(rows.size());
    for (const CovariateRow& r : rows) col.push_back(r.values[k]);
    d.columns.push_back(std::move(col));
  }
  return d;
}

}  // namespace graphlin
