#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "restruct/core.hpp"

// Family-generic heuristic machinery for subset-style problems: ranking of
// change candidates (which elements are worth deleting from S1 / adding from
// outside it) and greedy selection of precosted change operations under a
// budget. Exchange-based local search for permutations lives in the
// assignment module instead, since it needs permutation structure.

namespace restruct::heuristics {

// Exact score num/den with den > 0. Comparisons cross-multiply, so ranking
// never depends on floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

bool operator<(const Rational& a, const Rational& b);
bool operator==(const Rational& a, const Rational& b);

// Stage-2 view of one element, enough to score it for change.
struct ElementProfile {
  ElementId id = 0;
  std::int64_t profit2 = 0;
  std::int64_t weight2 = 0;
  CostPair cost;
};

struct CandidateRanking {
  IdSet deletion_candidates;  // from S1, best-to-delete first
  IdSet addition_candidates;  // from A \ S1, best-to-add first
  std::map<ElementId, Rational> scores;
};

// Scores every element and returns the top-k deletion and addition
// candidates. Deletion score of i in S1 is -profit2 / (h- + 1): elements
// that forgo little stage-2 profit per unit of deletion cost rank first.
// Addition score of i outside S1 is profit2 / ((h+ + 1) * (weight2 + 1)).
// The +1 denominators keep zero-cost elements scorable. Equal scores break
// ties by ascending element id.
CandidateRanking rank_change_candidates(
    const std::vector<ElementProfile>& elements, const IdSet& s1, int k);

enum class OpKind { deletion, addition, swap };

// One precosted change: delete/add a single element or swap one for another
// (a swap carries exactly {deleted, added}). `gain` is the stage-2 objective
// delta of applying the operation.
struct ChangeOperation {
  OpKind kind = OpKind::swap;
  IdSet elements;
  std::int64_t cost = 0;
  std::int64_t gain = 0;
};

// Repeatedly picks the affordable positive-gain operation with the best
// gain/cost ratio (ties: smaller cost, then lexicographic element list)
// until the budget is exhausted or nothing improving fits. Selected
// operations keep their input order.
std::vector<ChangeOperation> greedy_restructure(
    const std::vector<ChangeOperation>& operations, Budget budget);

// Gain-maximal operation subset within the budget, by enumeration over all
// subsets. Ties prefer smaller total cost, then the earlier subset in input
// order (lower index mask). Intended for small operation lists.
std::vector<ChangeOperation> best_operation_subset(
    const std::vector<ChangeOperation>& operations, Budget budget);

std::int64_t total_cost(const std::vector<ChangeOperation>& operations);
std::int64_t total_gain(const std::vector<ChangeOperation>& operations);

}  // namespace restruct::heuristics
