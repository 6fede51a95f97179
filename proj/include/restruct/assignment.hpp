#pragma once

#include <cstdint>
#include <vector>

#include "restruct/core.hpp"

// Permutation assignment: element i occupies position s[i] (0-based
// internally; file formats use 1-based labels). The base problem maximizes
// the total profit sum c(i, s[i]); restructuring searches for a permutation
// within a change budget H(S1 -> S*) = sum of h(s1[i], s*[i]) that minimizes
// the profit gap to a goal permutation.

namespace restruct::assignment {

using Permutation = std::vector<int>;  // s[i] = position of element i

struct ProfitMatrix {
  std::vector<std::vector<std::int64_t>> c;  // c[i][p] >= 0

  int size() const { return static_cast<int>(c.size()); }
};

// h[p][q] = cost of moving an element from position p to position q;
// zero diagonal.
struct ChangeCostMatrix {
  std::vector<std::vector<std::int64_t>> h;

  int size() const { return static_cast<int>(h.size()); }
};

struct Move {
  int element = 0;  // 0-based
  int from = 0;
  int to = 0;
};

using Moves = std::vector<Move>;
using Report = RestructureReport<Permutation, Moves>;

enum class SearchMethod { exact, exchange };

struct ExchangeOptions {
  bool use_three_exchange = false;
};

bool is_permutation(const Permutation& s);

// Profit-maximal permutation by the augmenting-path (Hungarian) method,
// polynomial in n.
Permutation solve_base(const ProfitMatrix& c);

std::int64_t total_profit(const ProfitMatrix& c, const Permutation& s);

// Componentwise position difference sa[i] - sb[i]; always sums to zero.
std::vector<std::int64_t> struct_diff(const Permutation& sa,
                                      const Permutation& sb);

// H(s1 -> s_star) = sum over elements of h(s1[i], s_star[i]).
std::int64_t change_cost(const Permutation& s1, const Permutation& s_star,
                         const ChangeCostMatrix& h);

// Absolute gap of total profits under one (stage-2) profit matrix.
ProximityValue proximity_profit(const Permutation& sa, const Permutation& sb,
                                const ProfitMatrix& c);

// Exact method: minimize proximity to s2 over all permutations with
// H(s1 -> S*) <= budget, by enumeration with pruning on partial change
// cost; ties prefer smaller H, then the lexicographically smaller
// permutation. n <= 10. Exchange method: best-improving 2-exchanges (and
// optionally 3-exchanges) starting from s1, accepting only strict proximity
// improvements whose cumulative change cost against s1 stays within budget.
Report restructure(const Permutation& s1, const Permutation& s2,
                   const ProfitMatrix& c2, const ChangeCostMatrix& h,
                   Budget budget, SearchMethod method,
                   ExchangeOptions options = {});

// 1-based convenience for file formats and display.
Permutation from_one_based(const std::vector<int>& labels);
std::vector<int> to_one_based(const Permutation& s);

}  // namespace restruct::assignment
