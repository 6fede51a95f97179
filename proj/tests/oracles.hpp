#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "restruct/assignment.hpp"
#include "restruct/core.hpp"
#include "restruct/knapsack.hpp"
#include "restruct/multichoice.hpp"
#include "restruct/trees.hpp"

// Brute-force reference solvers, kept independent of the library's search
// paths: subsets by bitmask, group products by recursion, permutations via
// std::next_permutation, trees by (n-1)-subset filtering with a throwaway
// union-find. Tie-breaking mirrors the documented solver order so oracle
// results can be compared for exact equality, sets included.

namespace oracle {

using restruct::Budget;
using restruct::ElementId;
using restruct::IdSet;

struct SubsetBest {
  bool found = false;
  IdSet set;
  std::int64_t profit = 0;
  std::int64_t change = 0;
};

// All 2^n subsets, feasibility = stage-2 capacity plus change budget.
// Order: max profit, min change, lexicographically smallest id set.
inline SubsetBest knapsack_restructure(const restruct::knapsack::Instance& in,
                                       const IdSet& s1, Budget budget) {
  using restruct::knapsack::Stage;
  const std::size_t n = in.items.size();
  std::map<ElementId, restruct::CostPair> costs;
  for (const auto& item : in.items) costs[item.id] = item.cost;
  SubsetBest best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    IdSet set;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) set.push_back(in.items[i].id);
    set = restruct::canonical_ids(set);
    if (restruct::knapsack::weight(in, set, Stage::two) > in.b2) continue;
    const std::int64_t change =
        restruct::change_cost(restruct::delta_of(s1, set), costs);
    if (change > budget.h_hat) continue;
    const std::int64_t profit =
        restruct::knapsack::profit(in, set, Stage::two);
    if (!best.found || profit > best.profit ||
        (profit == best.profit && change < best.change) ||
        (profit == best.profit && change == best.change && set < best.set)) {
      best = {true, set, profit, change};
    }
  }
  return best;
}

inline SubsetBest knapsack_base(const restruct::knapsack::Instance& in,
                                restruct::knapsack::Stage stage) {
  const std::size_t n = in.items.size();
  const std::int64_t cap =
      stage == restruct::knapsack::Stage::one ? in.b1 : in.b2;
  SubsetBest best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    IdSet set;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) set.push_back(in.items[i].id);
    set = restruct::canonical_ids(set);
    if (restruct::knapsack::weight(in, set, stage) > cap) continue;
    const std::int64_t profit = restruct::knapsack::profit(in, set, stage);
    if (!best.found || profit > best.profit ||
        (profit == best.profit && set < best.set))
      best = {true, set, profit, 0};
  }
  return best;
}

// Group-product enumeration for the multiple-choice family. The canonical
// key vector is the per-group selected id with "empty" ordered last.
struct GroupBest {
  bool found = false;
  IdSet set;
  std::vector<ElementId> keys;
  std::int64_t profit = 0;
  std::int64_t change = 0;
};

constexpr ElementId kNoPick = std::numeric_limits<ElementId>::max();

inline void multichoice_walk(const restruct::multichoice::Instance& in,
                             const IdSet& s1, Budget budget, bool restructure,
                             restruct::knapsack::Stage stage, std::size_t g,
                             IdSet& set, std::vector<ElementId>& keys,
                             GroupBest& best) {
  using restruct::knapsack::Stage;
  if (g == in.groups.size()) {
    const std::int64_t cap =
        stage == Stage::one ? in.b1 : in.b2;
    if (restruct::multichoice::weight(in, set, stage) > cap) return;
    std::int64_t change = 0;
    if (restructure) {
      std::map<ElementId, restruct::CostPair> costs;
      for (const auto& item : in.items) costs[item.id] = item.cost;
      change = restruct::change_cost(restruct::delta_of(s1, set), costs);
      if (change > budget.h_hat) return;
      if (in.changeable) {
        const restruct::DeltaPlan delta = restruct::delta_of(s1, set);
        for (const auto& moved : {delta.deleted, delta.added})
          for (ElementId id : moved)
            if (!std::binary_search(in.changeable->begin(),
                                    in.changeable->end(), id))
              return;
      }
    }
    const std::int64_t profit = restruct::multichoice::profit(in, set, stage);
    if (!best.found || profit > best.profit ||
        (profit == best.profit && change < best.change) ||
        (profit == best.profit && change == best.change && keys < best.keys))
      best = {true, restruct::canonical_ids(set), keys, profit, change};
    return;
  }
  for (ElementId id : in.groups[g]) {
    set.push_back(id);
    keys.push_back(id);
    multichoice_walk(in, s1, budget, restructure, stage, g + 1, set, keys, best);
    keys.pop_back();
    set.pop_back();
  }
  keys.push_back(kNoPick);
  multichoice_walk(in, s1, budget, restructure, stage, g + 1, set, keys, best);
  keys.pop_back();
}

inline GroupBest multichoice_restructure(
    const restruct::multichoice::Instance& in, const IdSet& s1,
    Budget budget) {
  GroupBest best;
  IdSet set;
  std::vector<ElementId> keys;
  multichoice_walk(in, s1, budget, true, restruct::knapsack::Stage::two, 0,
                   set, keys, best);
  return best;
}

inline GroupBest multichoice_base(const restruct::multichoice::Instance& in,
                                  restruct::knapsack::Stage stage) {
  GroupBest best;
  IdSet set;
  std::vector<ElementId> keys;
  multichoice_walk(in, {}, Budget{0}, false, stage, 0, set, keys, best);
  return best;
}

// Factorial enumeration for assignment. Order: min proximity, min change
// cost, lexicographically smallest permutation.
struct PermBest {
  bool found = false;
  restruct::assignment::Permutation perm;
  std::int64_t rho = 0;
  std::int64_t cost = 0;
};

inline PermBest assignment_restructure(
    const restruct::assignment::Permutation& s1,
    const restruct::assignment::Permutation& s2,
    const restruct::assignment::ProfitMatrix& c2,
    const restruct::assignment::ChangeCostMatrix& h, Budget budget) {
  const int n = static_cast<int>(s1.size());
  const std::int64_t goal = restruct::assignment::total_profit(c2, s2);
  restruct::assignment::Permutation perm(s1.size());
  std::iota(perm.begin(), perm.end(), 0);
  PermBest best;
  do {
    std::int64_t cost = 0;
    std::int64_t profit = 0;
    for (int i = 0; i < n; ++i) {
      cost += h.h[s1[i]][perm[i]];
      profit += c2.c[i][perm[i]];
    }
    if (cost > budget.h_hat) continue;
    const std::int64_t rho = std::abs(profit - goal);
    if (!best.found || rho < best.rho ||
        (rho == best.rho && cost < best.cost) ||
        (rho == best.rho && cost == best.cost && perm < best.perm))
      best = {true, perm, rho, cost};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::int64_t assignment_best_profit(
    const restruct::assignment::ProfitMatrix& c) {
  const int n = c.size();
  restruct::assignment::Permutation perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = -1;
  do {
    std::int64_t profit = 0;
    for (int i = 0; i < n; ++i) profit += c.c[i][perm[i]];
    best = std::max(best, profit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Spanning trees as (n-1)-subsets of the edge list that connect everything;
// acyclicity follows from the count. Uses its own tiny union-find.
inline std::vector<restruct::trees::EdgeSet> all_spanning_trees(
    const restruct::trees::Graph& g) {
  const std::size_t n = g.vertices.size();
  const std::size_t m = g.edges.size();
  std::vector<restruct::trees::EdgeSet> result;
  if (n == 0) return result;
  if (n == 1) {
    result.push_back({});
    return result;
  }
  auto index_of = [&](restruct::trees::VertexId v) {
    return static_cast<std::size_t>(
        std::lower_bound(g.vertices.begin(), g.vertices.end(), v) -
        g.vertices.begin());
  };
  std::vector<std::size_t> pick(n - 1);
  std::iota(pick.begin(), pick.end(), 0);
  if (m < n - 1) return result;
  for (;;) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t joins = 0;
    for (std::size_t idx : pick) {
      const std::size_t a = root(index_of(g.edges[idx].u));
      const std::size_t b = root(index_of(g.edges[idx].v));
      if (a != b) {
        parent[a] = b;
        ++joins;
      }
    }
    if (joins == n - 1) {
      restruct::trees::EdgeSet edges;
      for (std::size_t idx : pick) edges.push_back(g.edges[idx]);
      result.push_back(restruct::trees::canonical_edges(edges));
    }
    // next combination
    std::size_t k = n - 1;
    while (k > 0 && pick[k - 1] == m - (n - 1) + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < n - 1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return result;
}

struct TreeBest {
  bool found = false;
  restruct::trees::EdgeSet edges;
  std::vector<restruct::trees::VertexId> steiner;
  std::int64_t rho = 0;
  std::int64_t cost = 0;
};

inline TreeBest spanning_restructure(const restruct::trees::Graph& g,
                                     const restruct::trees::SpanningTree& t1,
                                     const restruct::trees::SpanningTree& t2,
                                     Budget budget,
                                     restruct::ProximityMode mode) {
  TreeBest best;
  for (const auto& edges : all_spanning_trees(g)) {
    const restruct::trees::SpanningTree candidate{edges};
    const std::int64_t cost = restruct::trees::edge_change_cost(g, t1, candidate);
    if (cost > budget.h_hat) continue;
    const std::int64_t rho =
        restruct::trees::proximity_between(g, candidate, t2, mode);
    if (!best.found || rho < best.rho || (rho == best.rho && cost < best.cost) ||
        (rho == best.rho && cost == best.cost && edges < best.edges))
      best = {true, edges, {}, rho, cost};
  }
  return best;
}

inline TreeBest steiner_restructure(const restruct::trees::SteinerProblem& p,
                                    const restruct::trees::SteinerTree& s1,
                                    const restruct::trees::SteinerTree& s2,
                                    Budget budget) {
  TreeBest best;
  const std::size_t z = p.candidates.size();
  for (std::uint32_t mask = 0; mask < (1u << z); ++mask) {
    std::vector<restruct::trees::VertexId> used;
    for (std::size_t i = 0; i < z; ++i)
      if (mask & (1u << i)) used.push_back(p.candidates[i]);
    IdSet keep = p.terminals;
    keep.insert(keep.end(), used.begin(), used.end());
    keep = restruct::canonical_ids(keep);
    restruct::trees::Graph sub;
    sub.vertices = keep;
    for (std::size_t i = 0; i < p.graph.edges.size(); ++i) {
      const auto& e = p.graph.edges[i];
      if (std::binary_search(keep.begin(), keep.end(), e.u) &&
          std::binary_search(keep.begin(), keep.end(), e.v)) {
        sub.edges.push_back(e);
        sub.edge_costs.push_back(p.graph.edge_costs[i]);
      }
    }
    for (const auto& edges : all_spanning_trees(sub)) {
      // Change cost recomputed here instead of through the library helper.
      std::int64_t cost = 0;
      for (std::size_t i = 0; i < p.graph.edges.size(); ++i) {
        const auto& e = p.graph.edges[i];
        const bool in_s1 =
            std::binary_search(s1.edges.begin(), s1.edges.end(), e);
        const bool in_cand = std::binary_search(edges.begin(), edges.end(), e);
        if (in_s1 && !in_cand) cost += p.graph.edge_costs[i].h_minus;
        if (!in_s1 && in_cand) cost += p.graph.edge_costs[i].h_plus;
      }
      for (std::size_t i = 0; i < p.candidates.size(); ++i) {
        const bool in_s1 =
            std::binary_search(s1.steiner_used.begin(), s1.steiner_used.end(),
                               p.candidates[i]);
        const bool in_cand =
            std::binary_search(used.begin(), used.end(), p.candidates[i]);
        if (in_s1 && !in_cand) cost += p.vertex_costs[i].h_minus;
        if (!in_s1 && in_cand) cost += p.vertex_costs[i].h_plus;
      }
      if (cost > budget.h_hat) continue;
      restruct::trees::EdgeSet diff;
      std::set_symmetric_difference(edges.begin(), edges.end(),
                                    s2.edges.begin(), s2.edges.end(),
                                    std::back_inserter(diff));
      const std::int64_t rho = static_cast<std::int64_t>(diff.size());
      if (!best.found || rho < best.rho ||
          (rho == best.rho && cost < best.cost) ||
          (rho == best.rho && cost == best.cost && edges < best.edges))
        best = {true, edges, used, rho, cost};
    }
  }
  return best;
}

}  // namespace oracle
