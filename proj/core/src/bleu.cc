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

#include "graphlin/bleu.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace graphlin {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsPeriodOrComma(char c) { return c == '.' || c == ','; }

// [{-~] [[-`] [ -&] [(-+] [:-@] and '/'.
bool IsSplitSymbol(char c) {
  return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') || (c >= ' ' && c <= '&') ||
         (c >= '(' && c <= '+') || (c >= ':' && c <= '@') || c == '/';
}

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  std::size_t at = 0;
  while ((at = s.find(from, at)) != std::string::npos) {
    s.replace(at, from.size(), to);
    at += to.size();
  }
}

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts CountNgrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::string Signature(std::size_t nrefs, BleuSmoothing smoothing) {
  std::ostringstream sig;
  sig << "nrefs:" << nrefs << "|case:mixed|eff:no|tok:13a|smooth:"
      << (smoothing == BleuSmoothing::kNone ? "none" : "add-one") << "|version:graphlin";
  return sig.str();
}

}  // namespace

std::vector<std::string> Tokenize13a(std::string_view line) {
  std::string s(line);
  ReplaceAll(s, "<skipped>", "");
  ReplaceAll(s, "-\n", "");
  std::replace(s.begin(), s.end(), '\n', ' ');
  if (s.find('&') != std::string::npos) {
    ReplaceAll(s, "&quot;", "\"");
    ReplaceAll(s, "&amp;", "&");
    ReplaceAll(s, "&lt;", "<");
    ReplaceAll(s, "&gt;", ">");
  }
  s = " " + s + " ";

  std::string a;
  for (char c : s) {
    if (IsSplitSymbol(c)) {
      a += ' ';
      a += c;
      a += ' ';
    } else {
      a += c;
    }
  }
  // Each pass mirrors one left-to-right, non-overlapping regex substitution.
  std::string b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i + 1 < a.size() && !IsDigit(a[i]) && IsPeriodOrComma(a[i + 1])) {
      b += a[i];
      b += ' ';
      b += a[i + 1];
      b += ' ';
      ++i;
    } else {
      b += a[i];
    }
  }
  std::string c;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i + 1 < b.size() && IsPeriodOrComma(b[i]) && !IsDigit(b[i + 1])) {
      c += ' ';
      c += b[i];
      c += ' ';
      c += b[i + 1];
      ++i;
    } else {
      c += b[i];
    }
  }
  std::string d;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && IsDigit(c[i]) && c[i + 1] == '-') {
      d += c[i];
      d += " - ";
      ++i;
    } else {
      d += c[i];
    }
  }

  std::vector<std::string> tokens;
  std::istringstream in(d);
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kBleuOrder; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hypothesis_length += other.hypothesis_length;
  reference_length += other.reference_length;
  return *this;
}

BleuStats SegmentStats(const std::vector<std::string>& hypothesis,
                       const std::vector<std::vector<std::string>>& references) {
  BleuStats stats;
  stats.hypothesis_length = hypothesis.size();
  std::size_t best_diff = static_cast<std::size_t>(-1);
  for (const auto& ref : references) {
    const std::size_t len = ref.size();
    const std::size_t diff = len > hypothesis.size() ? len - hypothesis.size()
                                                     : hypothesis.size() - len;
    if (diff < best_diff || (diff == best_diff && len < stats.reference_length)) {
      best_diff = diff;
      stats.reference_length = len;
    }
  }
  for (int n = 1; n <= kBleuOrder; ++n) {
    const NgramCounts hyp = CountNgrams(hypothesis, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : CountNgrams(ref, n)) {
        std::size_t& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    for (const auto& [gram, count] : hyp) {
      stats.totals[n - 1] += count;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) stats.matches[n - 1] += std::min(count, it->second);
    }
  }
  return stats;
}

BleuReport ComputeBleu(const BleuStats& stats, BleuSmoothing smoothing) {
  BleuReport report;
  report.hypothesis_length = stats.hypothesis_length;
  report.reference_length = stats.reference_length;
  const double c = static_cast<double>(stats.hypothesis_length);
  const double r = static_cast<double>(stats.reference_length);
  if (c == 0.0) {
    report.brevity_penalty = 0.0;
  } else {
    report.brevity_penalty = c < r ? std::exp(1.0 - r / c) : 1.0;
  }
  double log_sum = 0.0;
  bool zero = false;
  for (int n = 0; n < kBleuOrder; ++n) {
    double m = static_cast<double>(stats.matches[n]);
    double t = static_cast<double>(stats.totals[n]);
    if (smoothing == BleuSmoothing::kAddOne) {
      m += 1.0;
      t += 1.0;
    }
    const double p = t > 0.0 ? m / t : 0.0;
    report.precisions[n] = 100.0 * p;
    if (p <= 0.0) {
      zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  report.score =
      zero ? 0.0 : report.brevity_penalty * std::exp(log_sum / kBleuOrder) * 100.0;
  return report;
}

BleuReport CorpusBleu(const std::vector<std::string>& hypotheses,
                      const std::vector<std::vector<std::string>>& references) {
  if (hypotheses.empty()) throw BleuError("Empty: no hypotheses");
  if (hypotheses.size() != references.size()) {
    throw BleuError("LengthMismatch: " + std::to_string(hypotheses.size()) + " hypotheses, " +
                    std::to_string(references.size()) + " reference sets");
  }
  BleuStats total;
  std::size_t nrefs = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (references[i].empty()) {
      throw BleuError("hypothesis " + std::to_string(i + 1) + " has no reference");
    }
    nrefs = std::max(nrefs, references[i].size());
    std::vector<std::vector<std::string>> refs;
    for (const std::string& ref : references[i]) refs.push_back(Tokenize13a(ref));
    total += SegmentStats(Tokenize13a(hypotheses[i]), refs);
  }
  BleuReport report = ComputeBleu(total, BleuSmoothing::kNone);
  report.signature = Signature(nrefs, BleuSmoothing::kNone);
  return report;
}

double SentenceBleu(const std::string& hypothesis, const std::vector<std::string>& references) {
  if (references.empty()) throw BleuError("hypothesis has no reference");
  std::vector<std::vector<std::string>> refs;
  for (const std::string& ref : references) refs.push_back(Tokenize13a(ref));
  return ComputeBleu(SegmentStats(Tokenize13a(hypothesis), refs), BleuSmoothing::kAddOne).score;
}

}  // namespace graphlin
