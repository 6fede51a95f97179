#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "restruct/assignment.hpp"
#include "restruct/knapsack.hpp"
#include "restruct/multichoice.hpp"
#include "restruct/trees.hpp"

// Seeded random-instance generators shared by the property suites.

namespace testutil {

using Rng = std::mt19937_64;

inline std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline restruct::knapsack::Instance random_knapsack(Rng& rng, int max_items,
                                                    std::int64_t max_value) {
  restruct::knapsack::Instance instance;
  const int n = static_cast<int>(pick(rng, 1, max_items));
  for (int i = 0; i < n; ++i)
    instance.items.push_back({i + 1, pick(rng, 0, max_value),
                              pick(rng, 0, 8), pick(rng, 0, max_value),
                              pick(rng, 0, 8),
                              {pick(rng, 0, 5), pick(rng, 0, 5)}});
  instance.b1 = pick(rng, 0, 8 * n / 2 + 1);
  instance.b2 = pick(rng, 0, 8 * n / 2 + 1);
  return instance;
}

inline restruct::IdSet random_subset(Rng& rng, const restruct::IdSet& ids) {
  restruct::IdSet out;
  for (restruct::ElementId id : ids)
    if (pick(rng, 0, 1) == 1) out.push_back(id);
  return out;
}

inline restruct::multichoice::Instance random_multichoice(Rng& rng,
                                                          int max_groups,
                                                          int max_per_group) {
  restruct::multichoice::Instance instance;
  const int groups = static_cast<int>(pick(rng, 1, max_groups));
  restruct::ElementId next = 1;
  for (int g = 0; g < groups; ++g) {
    const int size = static_cast<int>(pick(rng, 1, max_per_group));
    restruct::IdSet group;
    for (int k = 0; k < size; ++k) {
      instance.items.push_back({next, pick(rng, 0, 9), pick(rng, 0, 5),
                                pick(rng, 0, 9), pick(rng, 0, 5),
                                {pick(rng, 0, 4), pick(rng, 0, 4)}});
      group.push_back(next++);
    }
    instance.groups.push_back(group);
  }
  instance.b1 = pick(rng, 0, 5 * groups);
  instance.b2 = pick(rng, 0, 5 * groups);
  return instance;
}

// One valid selection (possibly empty slots), used as S1; capacity of the
// requested stage is respected by construction when loose = false.
inline restruct::IdSet random_selection(Rng& rng,
                                        const restruct::multichoice::Instance& in) {
  restruct::IdSet out;
  for (const auto& group : in.groups) {
    const std::int64_t roll = pick(rng, 0, static_cast<std::int64_t>(group.size()));
    if (roll > 0) out.push_back(group[static_cast<std::size_t>(roll - 1)]);
  }
  return restruct::canonical_ids(out);
}

inline restruct::assignment::ProfitMatrix random_profits(Rng& rng, int n,
                                                         std::int64_t max_value) {
  restruct::assignment::ProfitMatrix c;
  c.c.assign(n, std::vector<std::int64_t>(n, 0));
  for (auto& row : c.c)
    for (auto& value : row) value = pick(rng, 0, max_value);
  return c;
}

inline restruct::assignment::ChangeCostMatrix random_move_costs(Rng& rng,
                                                                int n) {
  restruct::assignment::ChangeCostMatrix h;
  h.h.assign(n, std::vector<std::int64_t>(n, 0));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) h.h[p][q] = p == q ? 0 : pick(rng, 0, 4);
  return h;
}

inline restruct::assignment::Permutation random_permutation(Rng& rng, int n) {
  restruct::assignment::Permutation s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

// Random connected graph with unit-free integer costs; retries until
// connected.
inline restruct::trees::Graph random_connected_graph(Rng& rng, int n,
                                                     bool with_weights) {
  using restruct::trees::Edge;
  for (;;) {
    restruct::trees::Graph g;
    for (int v = 1; v <= n; ++v) g.vertices.push_back(v);
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (pick(rng, 0, 99) < 55) g.edges.push_back(Edge{u, v});
    g.edges = restruct::trees::canonical_edges(g.edges);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      g.edge_costs.push_back({pick(rng, 0, 3), pick(rng, 0, 3)});
      if (with_weights) g.edge_weights.push_back(pick(rng, 1, 9));
    }
    // connectivity probe
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = n;
    for (const Edge& e : g.edges) {
      const int a = root(static_cast<int>(e.u) - 1);
      const int b = root(static_cast<int>(e.v) - 1);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components == 1) return g;
  }
}

}  // namespace testutil
