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

#include "graphlin/smatch.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace graphlin {
namespace {

constexpr int kUnmapped = -1;

// Triple counts of one graph in index form. Instance, attribute and top
// triples depend on a single variable ("unary"); relations on two.
struct IndexedGraph {
  std::vector<std::string> vars;
  std::vector<std::map<std::string, std::size_t>> unary;
  std::map<std::tuple<int, std::string, int>, std::size_t> relations;
  std::size_t total = 0;

  explicit IndexedGraph(const AmrGraph& g) {
    std::unordered_map<std::string, int> index;
    for (const std::string& v : g.variables()) {
      index.emplace(v, static_cast<int>(vars.size()));
      vars.push_back(v);
    }
    unary.resize(vars.size());
    for (const Triple& t : g.triples()) {
      switch (t.kind) {
        case TripleKind::kInstance:
          ++unary[index.at(t.source)]["I\x1f" + t.target];
          break;
        case TripleKind::kAttribute:
          ++unary[index.at(t.source)]["A\x1f" + t.role + "\x1f" + t.target];
          break;
        case TripleKind::kRelation:
          ++relations[{index.at(t.source), t.role, index.at(t.target)}];
          break;
      }
    }
    ++unary[index.at(g.top())]["T\x1f" + *g.ConceptOf(g.top())];
    total = g.triples().size() + 1;
  }
};

class Scorer {
 public:
  Scorer(const IndexedGraph& left, const IndexedGraph& right) : left_(left), right_(right) {
    const std::size_t n = left.vars.size(), m = right.vars.size();
    single_.assign(n, std::vector<std::size_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t s = 0;
        for (const auto& [fact, count] : left.unary[i]) {
          auto it = right.unary[j].find(fact);
          if (it != right.unary[j].end()) s += std::min(count, it->second);
        }
        single_[i][j] = s;
      }
    }
    for (const auto& [key, count] : left.relations) rel_.push_back({key, count});
    touching_.resize(n);
    for (std::size_t r = 0; r < rel_.size(); ++r) {
      const int a = std::get<0>(rel_[r].first), b = std::get<2>(rel_[r].first);
      touching_[a].push_back(r);
      if (b != a) touching_[b].push_back(r);
    }
  }

  std::size_t left_size() const { return left_.vars.size(); }
  std::size_t right_size() const { return right_.vars.size(); }

  std::size_t Single(int i, int j) const { return j == kUnmapped ? 0 : single_[i][j]; }

  std::size_t Relation(std::size_t r, const std::vector<int>& map) const {
    const auto& [key, count] = rel_[r];
    const int a = map[std::get<0>(key)], b = map[std::get<2>(key)];
    if (a == kUnmapped || b == kUnmapped) return 0;
    auto it = right_.relations.find({a, std::get<1>(key), b});
    return it == right_.relations.end() ? 0 : std::min(count, it->second);
  }

  std::size_t Score(const std::vector<int>& map) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < map.size(); ++i) s += Single(static_cast<int>(i), map[i]);
    for (std::size_t r = 0; r < rel_.size(); ++r) s += Relation(r, map);
    return s;
  }

  // Score restricted to terms that involve any of `vars`.
  std::size_t Local(const std::vector<int>& map, std::initializer_list<int> vars) const {
    std::size_t s = 0;
    std::vector<std::size_t> seen;
    for (int v : vars) {
      s += Single(v, map[v]);
      for (std::size_t r : touching_[v]) {
        if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
        seen.push_back(r);
        s += Relation(r, map);
      }
    }
    return s;
  }

  std::size_t relation_count() const { return rel_.size(); }
  const std::pair<std::tuple<int, std::string, int>, std::size_t>& relation(std::size_t r) const {
    return rel_[r];
  }
  const std::vector<std::size_t>& touching(int v) const { return touching_[v]; }
  const std::map<std::tuple<int, std::string, int>, std::size_t>& right_relations() const {
    return right_.relations;
  }

 private:
  const IndexedGraph& left_;
  const IndexedGraph& right_;
  std::vector<std::vector<std::size_t>> single_;
  std::vector<std::pair<std::tuple<int, std::string, int>, std::size_t>> rel_;
  std::vector<std::vector<std::size_t>> touching_;
};

SmatchResult MakeResult(std::size_t matched, const IndexedGraph& left, const IndexedGraph& right,
                        const std::vector<int>& map) {
  SmatchResult r;
  r.matched = matched;
  r.left_total = left.total;
  r.right_total = right.total;
  r.precision = static_cast<double>(matched) / static_cast<double>(left.total);
  r.recall = static_cast<double>(matched) / static_cast<double>(right.total);
  r.f_score = r.precision + r.recall > 0.0
                  ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                  : 0.0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] != kUnmapped) r.mapping.emplace_back(left.vars[i], right.vars[map[i]]);
  }
  return r;
}

std::vector<int> SmartStart(const Scorer& scorer, const IndexedGraph& left,
                            const IndexedGraph& right, Rng& rng) {
  const std::size_t n = scorer.left_size(), m = scorer.right_size();
  std::vector<int> map(n, kUnmapped);
  std::vector<char> used(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto concept_name = std::find_if(left.unary[i].begin(), left.unary[i].end(),
                                [](const auto& f) { return f.first[0] == 'I'; });
    for (std::size_t j = 0; j < m && concept_name != left.unary[i].end(); ++j) {
      if (!used[j] && right.unary[j].count(concept_name->first)) {
        map[i] = static_cast<int>(j);
        used[j] = 1;
        break;
      }
    }
  }
  std::vector<int> free;
  for (std::size_t j = 0; j < m; ++j) {
    if (!used[j]) free.push_back(static_cast<int>(j));
  }
  rng.Shuffle(free);
  for (std::size_t i = 0; i < n && !free.empty(); ++i) {
    if (map[i] == kUnmapped) {
      map[i] = free.back();
      free.pop_back();
    }
  }
  return map;
}

std::vector<int> RandomStart(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<int> right(m);
  std::iota(right.begin(), right.end(), 0);
  rng.Shuffle(right);
  std::vector<int> map(n, kUnmapped);
  for (std::size_t i = 0; i < n && i < m; ++i) map[i] = right[i];
  rng.Shuffle(map);
  return map;
}

// Moves `a` to right variable `j`; a displaced owner takes a's old target.
void Assign(std::vector<int>& map, std::vector<int>& owner, int a, int j) {
  const int old = map[a];
  if (old == j) return;
  const int displaced = owner[j];
  if (displaced != kUnmapped) {
    map[displaced] = old;
    if (old != kUnmapped) owner[old] = displaced;
  } else if (old != kUnmapped) {
    owner[old] = kUnmapped;
  }
  map[a] = j;
  owner[j] = a;
}

// Best move that maps both ends of a left relation onto a right relation
// with the same role. Returns the gain; zero leaves `map` unchanged.
long RelationMove(const Scorer& scorer, std::vector<int>& map, std::vector<int>& owner,
                  std::size_t score) {
  long best_gain = 0;
  std::vector<int> best_map, best_owner;
  for (std::size_t r = 0; r < scorer.relation_count(); ++r) {
    const auto& [a, role, b] = scorer.relation(r).first;
    for (const auto& [key, count] : scorer.right_relations()) {
      const auto& [c, right_role, d] = key;
      if (right_role != role || (a == b) != (c == d)) continue;
      if (map[a] == c && map[b] == d) continue;
      std::vector<int> m = map, o = owner;
      Assign(m, o, a, c);
      Assign(m, o, b, d);
      if (m[a] != c || m[b] != d) continue;
      const long gain = static_cast<long>(scorer.Score(m)) - static_cast<long>(score);
      if (gain > best_gain) {
        best_gain = gain;
        best_map = std::move(m);
        best_owner = std::move(o);
      }
    }
  }
  if (best_gain > 0) {
    map = std::move(best_map);
    owner = std::move(best_owner);
  }
  return best_gain;
}

// Steepest ascent over reassignments (to a free right variable or to
// nothing) and swaps; at a local optimum, over relation moves.
std::size_t Climb(const Scorer& scorer, std::vector<int>& map) {
  const int n = static_cast<int>(scorer.left_size());
  const int m = static_cast<int>(scorer.right_size());
  std::vector<int> owner(m, kUnmapped);
  for (int i = 0; i < n; ++i) {
    if (map[i] != kUnmapped) owner[map[i]] = i;
  }
  std::size_t score = scorer.Score(map);
  while (true) {
    long best_gain = 0;
    int best_i = -1, best_target = kUnmapped, best_swap = -1;
    for (int i = 0; i < n; ++i) {
      const int old = map[i];
      const long before = static_cast<long>(scorer.Local(map, {i}));
      for (int j = -1; j < m; ++j) {
        if (j == old || (j != kUnmapped && owner[j] != kUnmapped)) continue;
        map[i] = j;
        const long gain = static_cast<long>(scorer.Local(map, {i})) - before;
        map[i] = old;
        if (gain > best_gain) {
          best_gain = gain;
          best_i = i;
          best_target = j;
          best_swap = -1;
        }
      }
      for (int k = i + 1; k < n; ++k) {
        if (map[k] == old) continue;
        const long before_pair = static_cast<long>(scorer.Local(map, {i, k}));
        std::swap(map[i], map[k]);
        const long gain = static_cast<long>(scorer.Local(map, {i, k})) - before_pair;
        std::swap(map[i], map[k]);
        if (gain > best_gain) {
          best_gain = gain;
          best_i = i;
          best_swap = k;
        }
      }
    }
    if (best_gain <= 0) {
      const long gain = RelationMove(scorer, map, owner, score);
      if (gain <= 0) return score;
      score += static_cast<std::size_t>(gain);
      continue;
    }
    if (best_swap >= 0) {
      std::swap(map[best_i], map[best_swap]);
      if (map[best_i] != kUnmapped) owner[map[best_i]] = best_i;
      if (map[best_swap] != kUnmapped) owner[map[best_swap]] = best_swap;
    } else {
      if (map[best_i] != kUnmapped) owner[map[best_i]] = kUnmapped;
      map[best_i] = best_target;
      if (best_target != kUnmapped) owner[best_target] = best_i;
    }
    score += static_cast<std::size_t>(best_gain);
  }
}

class ExactSearch {
 public:
  explicit ExactSearch(const Scorer& scorer) : scorer_(scorer) {
    const std::size_t n = scorer.left_size(), m = scorer.right_size();
    best_single_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        best_single_[i] = std::max(best_single_[i], scorer.Single(static_cast<int>(i),
                                                                  static_cast<int>(j)));
      }
    }
    // Most constrained variables first.
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return scorer.touching(a).size() > scorer.touching(b).size();
    });
    map_.assign(n, kUnmapped);
    assigned_.assign(n, 0);
    used_.assign(m, 0);
  }

  std::size_t Run(std::vector<int>* best_map) {
    Search(0, 0);
    *best_map = best_map_;
    return best_;
  }

 private:
  std::size_t Bound(std::size_t depth) const {
    std::size_t bound = 0;
    for (std::size_t d = depth; d < order_.size(); ++d) bound += best_single_[order_[d]];
    for (std::size_t r = 0; r < scorer_.relation_count(); ++r) {
      const auto& key = scorer_.relation(r).first;
      if (!assigned_[std::get<0>(key)] || !assigned_[std::get<2>(key)]) {
        bound += scorer_.relation(r).second;
      }
    }
    return bound;
  }

  // Terms completed by assigning `v`: its unary facts and the relations
  // whose other end is already assigned.
  std::size_t Gain(int v) const {
    std::size_t s = scorer_.Single(v, map_[v]);
    for (std::size_t r : scorer_.touching(v)) {
      const auto& key = scorer_.relation(r).first;
      const int other = std::get<0>(key) == v ? std::get<2>(key) : std::get<0>(key);
      if (other == v || assigned_[other]) s += scorer_.Relation(r, map_);
    }
    return s;
  }

  void Search(std::size_t depth, std::size_t score) {
    if (depth == order_.size()) {
      if (score > best_ || best_map_.empty()) {
        best_ = score;
        best_map_ = map_;
      }
      return;
    }
    if (!best_map_.empty() && score + Bound(depth) <= best_) return;
    const int v = order_[depth];
    const std::size_t remaining_left = order_.size() - depth;
    std::size_t remaining_right = 0;
    for (char u : used_) remaining_right += !u;
    assigned_[v] = 1;
    for (std::size_t j = 0; j < used_.size(); ++j) {
      if (used_[j]) continue;
      used_[j] = 1;
      map_[v] = static_cast<int>(j);
      Search(depth + 1, score + Gain(v));
      used_[j] = 0;
    }
    // Leaving a variable unmapped only helps when the right side runs out.
    if (remaining_right < remaining_left) {
      map_[v] = kUnmapped;
      Search(depth + 1, score + Gain(v));
    }
    map_[v] = kUnmapped;
    assigned_[v] = 0;
  }

  const Scorer& scorer_;
  std::vector<std::size_t> best_single_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<char> assigned_;
  std::vector<char> used_;
  std::vector<int> best_map_;
  std::size_t best_ = 0;
};

SmatchResult Swap(SmatchResult r) {
  std::swap(r.precision, r.recall);
  std::swap(r.left_total, r.right_total);
  for (auto& [a, b] : r.mapping) std::swap(a, b);
  std::sort(r.mapping.begin(), r.mapping.end());
  return r;
}

}  // namespace

SmatchResult Smatch(const AmrGraph& left, const AmrGraph& right, Rng& rng,
                    std::size_t restarts) {
  const IndexedGraph l(left), r(right);
  const Scorer scorer(l, r);
  restarts = std::max<std::size_t>(1, restarts);
  std::vector<int> best_map;
  std::size_t best = 0;
  for (std::size_t k = 0; k < restarts; ++k) {
    std::vector<int> map = k == 0 ? SmartStart(scorer, l, r, rng)
                                  : RandomStart(scorer.left_size(), scorer.right_size(), rng);
    const std::size_t score = Climb(scorer, map);
    if (best_map.empty() || score > best) {
      best = score;
      best_map = std::move(map);
    }
  }
  return MakeResult(best, l, r, best_map);
}

SmatchResult SmatchExact(const AmrGraph& left, const AmrGraph& right) {
  const std::size_t n = left.variable_count(), m = right.variable_count();
  if (std::min(n, m) > kSmatchExactLimit) {
    throw SmatchTooLarge("TooLarge: exact smatch supports at most " +
                         std::to_string(kSmatchExactLimit) + " variables on one side");
  }
  if (n > m) return Swap(SmatchExact(right, left));
  const IndexedGraph l(left), r(right);
  const Scorer scorer(l, r);
  std::vector<int> map;
  const std::size_t best = ExactSearch(scorer).Run(&map);
  return MakeResult(best, l, r, map);
}

}  // namespace graphlin
