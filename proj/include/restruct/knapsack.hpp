#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "restruct/core.hpp"
#include "restruct/heuristics.hpp"

// 0/1 knapsack at two stages plus budgeted restructuring: turn the stage-1
// solution S1 into an S* that maximizes stage-2 profit subject to the
// stage-2 capacity and a bound on the total change cost
//   H(S1 -> S*) = sum of h- over deleted + sum of h+ over added elements.

namespace restruct::knapsack {

enum class Stage { one = 1, two = 2 };

struct Item {
  ElementId id = 0;
  std::int64_t c1 = 0;  // stage-1 profit
  std::int64_t a1 = 0;  // stage-1 weight
  std::int64_t c2 = 0;  // stage-2 profit
  std::int64_t a2 = 0;  // stage-2 weight
  CostPair cost;
};

struct Instance {
  std::vector<Item> items;
  std::int64_t b1 = 0;  // stage-1 capacity
  std::int64_t b2 = 0;  // stage-2 capacity

  const Item* find(ElementId id) const;
};

using Solution = IdSet;  // selected element ids, sorted
using Report = RestructureReport<Solution>;

std::int64_t profit(const Instance& instance, const Solution& s, Stage stage);
std::int64_t weight(const Instance& instance, const Solution& s, Stage stage);

// Profit-maximal feasible subset for the chosen stage. Deterministic:
// ties prefer the lexicographically smallest selected-id set.
Solution solve_base(const Instance& instance, Stage stage);

// Exact restructuring by dynamic programming over (stage-2 capacity, change
// budget). Among equal-profit optima prefers smaller change cost, then the
// lexicographically smallest selected-id set. When no subset satisfies both
// constraints the report carries S1 with feasible=false. Proximity is the
// stage-2 objective gap to s2, or to the base stage-2 optimum when s2 is
// absent.
Report restructure_exact(const Instance& instance, const Solution& s1,
                         const std::optional<Solution>& s2, Budget budget);

// Same model, but elements outside `changeable` are frozen to their S1
// membership.
Report restructure_masked(const Instance& instance, const Solution& s1,
                          const std::optional<Solution>& s2, Budget budget,
                          const IdSet& changeable);

// Reduced-dimension heuristic: only the top-k deletion candidates (from S1)
// and top-k addition candidates (from A \ S1), ranked by
// heuristics::rank_change_candidates on stage-2 data, may change state; the
// reduced problem is then solved exactly. Objective never exceeds
// restructure_exact's.
Report restructure_reduced(const Instance& instance, const Solution& s1,
                           const std::optional<Solution>& s2, Budget budget,
                           int candidate_count);

// Stage-2 change-candidate profiles handed to the ranking heuristic.
std::vector<heuristics::ElementProfile> stage2_profiles(
    const Instance& instance);

}  // namespace restruct::knapsack
