#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "restruct/core.hpp"
#include "restruct/knapsack.hpp"

// Multiple-choice selection: the element set is partitioned into groups and
// any solution picks at most one element per group, under a stage capacity.
// Restructuring swaps, drops, or freshly picks group representatives within
// a change budget; the per-group change cost is h-(old) + h+(new) for a
// swap, h-(old) for a drop, h+(new) for a fresh pick, and 0 for keeping.

namespace restruct::multichoice {

using Stage = knapsack::Stage;
using Item = knapsack::Item;

struct Instance {
  std::vector<IdSet> groups;  // disjoint id sets partitioning all item ids
  std::vector<Item> items;
  std::int64_t b1 = 0;
  std::int64_t b2 = 0;
  // Restricted mode: only these elements may change S1 membership. Empty
  // optional = every element may change.
  std::optional<IdSet> changeable;

  const Item* find(ElementId id) const;
  // Index of the group containing id, or -1.
  int group_of(ElementId id) const;
};

using Solution = IdSet;  // at most one id per group, sorted
using Report = RestructureReport<Solution>;

std::int64_t profit(const Instance& instance, const Solution& s, Stage stage);
std::int64_t weight(const Instance& instance, const Solution& s, Stage stage);

// Violated structural constraints of s (unknown ids, two picks in one
// group), empty when valid.
std::vector<std::string> solution_violations(const Instance& instance,
                                             const Solution& s);

// Profit-maximal selection with at most one element per group, by dynamic
// programming over groups x capacity. Ties prefer, group by group, the
// smallest selected id (an empty slot ranks after any id).
Solution solve_base(const Instance& instance, Stage stage);

// Exact budgeted restructuring by dynamic programming over groups x
// capacity x change budget. Tie order: max stage-2 profit, min change cost,
// then the group-wise canonical choice above.
Report restructure_exact(const Instance& instance, const Solution& s1,
                         const std::optional<Solution>& s2, Budget budget);

// Every optimal selection (max stage-2 profit within both constraints), by
// enumeration over the group-choice product. Intended for small instances;
// throws when the product exceeds an internal cap.
std::vector<Solution> enumerate_optima(const Instance& instance,
                                       const Solution& s1, Budget budget);

// Affine priority-to-profit map 4 - p for priorities graded 1..3.
// Throws std::out_of_range outside that range.
std::int64_t priorities_to_profits(std::int64_t priority);

}  // namespace restruct::multichoice
