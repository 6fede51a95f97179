#include "restruct/assignment.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace restruct::assignment {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

void check_square(const std::vector<std::vector<std::int64_t>>& m,
                  const char* name) {
  for (const auto& row : m)
    if (row.size() != m.size())
      throw std::invalid_argument(std::string(name) + " must be square");
}

void check_profit(const ProfitMatrix& c) {
  check_square(c.c, "profit matrix");
  for (const auto& row : c.c)
    for (std::int64_t value : row)
      if (value < 0)
        throw std::invalid_argument("profits must be nonnegative");
}

void check_costs(const ChangeCostMatrix& h) {
  check_square(h.h, "change cost matrix");
  for (std::size_t p = 0; p < h.h.size(); ++p) {
    for (std::size_t q = 0; q < h.h.size(); ++q)
      if (h.h[p][q] < 0)
        throw std::invalid_argument("change costs must be nonnegative");
    if (h.h[p][p] != 0)
      throw std::invalid_argument("change cost diagonal must be zero");
  }
}

void check_perm(const Permutation& s, int n, const char* name) {
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument(std::string(name) + ": length mismatch");
  if (!is_permutation(s))
    throw std::invalid_argument(std::string(name) +
                                " is not a permutation of positions");
}

Moves moves_between(const Permutation& s1, const Permutation& s_star) {
  Moves moves;
  for (std::size_t i = 0; i < s1.size(); ++i)
    if (s1[i] != s_star[i])
      moves.push_back({static_cast<int>(i), s1[i], s_star[i]});
  return moves;
}

struct Candidate {
  std::int64_t rho = kInf;
  std::int64_t cost = kInf;
  Permutation perm;

  bool beats(const Candidate& other) const {
    if (rho != other.rho) return rho < other.rho;
    if (cost != other.cost) return cost < other.cost;
    return perm < other.perm;
  }
};

// Depth-first enumeration over position assignments with pruning on the
// partial change cost (all h entries are nonnegative, so a partial sum
// already over budget can never recover).
Candidate search_exact(const Permutation& s1, const ProfitMatrix& c2,
                       const ChangeCostMatrix& h, Budget budget,
                       std::int64_t goal_profit) {
  const int n = static_cast<int>(s1.size());
  Candidate best;
  Permutation current(static_cast<std::size_t>(n), 0);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto dfs = [&](auto&& self, int element, std::int64_t cost,
                 std::int64_t prof) -> void {
    if (element == n) {
      Candidate candidate{std::abs(prof - goal_profit), cost, current};
      if (candidate.beats(best)) best = candidate;
      return;
    }
    for (int pos = 0; pos < n; ++pos) {
      if (used[pos]) continue;
      const std::int64_t next_cost = cost + h.h[s1[element]][pos];
      if (next_cost > budget.h_hat) continue;
      used[pos] = true;
      current[element] = pos;
      self(self, element + 1, next_cost, prof + c2.c[element][pos]);
      used[pos] = false;
    }
  };
  dfs(dfs, 0, 0, 0);
  return best;
}

Candidate search_exchange(const Permutation& s1, const ProfitMatrix& c2,
                          const ChangeCostMatrix& h, Budget budget,
                          std::int64_t goal_profit, ExchangeOptions options) {
  const int n = static_cast<int>(s1.size());
  Candidate current{std::abs(total_profit(c2, s1) - goal_profit), 0, s1};
  for (;;) {
    Candidate best_move;
    auto offer = [&](const Permutation& candidate) {
      const std::int64_t cost = change_cost(s1, candidate, h);
      if (cost > budget.h_hat) return;
      Candidate offer_candidate{
          std::abs(total_profit(c2, candidate) - goal_profit), cost,
          candidate};
      if (offer_candidate.rho >= current.rho) return;  // strict improvement
      if (offer_candidate.beats(best_move)) best_move = offer_candidate;
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Permutation candidate = current.perm;
        std::swap(candidate[i], candidate[j]);
        offer(candidate);
      }
    }
    if (options.use_three_exchange) {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = j + 1; k < n; ++k) {
            Permutation rotated = current.perm;
            // 3-cycle one way ...
            rotated[i] = current.perm[j];
            rotated[j] = current.perm[k];
            rotated[k] = current.perm[i];
            offer(rotated);
            // ... and the other.
            rotated[i] = current.perm[k];
            rotated[j] = current.perm[i];
            rotated[k] = current.perm[j];
            offer(rotated);
          }
    }
    if (best_move.perm.empty()) break;
    current = best_move;
  }
  return current;
}

}  // namespace

bool is_permutation(const Permutation& s) {
  std::vector<bool> seen(s.size(), false);
  for (int pos : s) {
    if (pos < 0 || pos >= static_cast<int>(s.size()) || seen[pos])
      return false;
    seen[pos] = true;
  }
  return true;
}

Permutation solve_base(const ProfitMatrix& c) {
  check_profit(c);
  const int n = c.size();
  if (n == 0) return {};
  std::int64_t top = 0;
  for (const auto& row : c.c)
    for (std::int64_t value : row) top = std::max(top, value);

  // Potentials-based augmenting-path assignment on the complementary cost
  // top - c, which turns profit maximization into cost minimization.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      int j1 = 0;
      std::int64_t delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = (top - c.c[i0 - 1][j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  Permutation s(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= n; ++j) s[match[j] - 1] = j - 1;
  return s;
}

std::int64_t total_profit(const ProfitMatrix& c, const Permutation& s) {
  if (static_cast<int>(s.size()) != c.size())
    throw std::invalid_argument("permutation does not match matrix size");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += c.c[i][s[i]];
  return sum;
}

std::vector<std::int64_t> struct_diff(const Permutation& sa,
                                      const Permutation& sb) {
  if (sa.size() != sb.size())
    throw std::invalid_argument("struct_diff: length mismatch");
  std::vector<std::int64_t> diff(sa.size(), 0);
  for (std::size_t i = 0; i < sa.size(); ++i) diff[i] = sa[i] - sb[i];
  return diff;
}

std::int64_t change_cost(const Permutation& s1, const Permutation& s_star,
                         const ChangeCostMatrix& h) {
  if (s1.size() != s_star.size())
    throw std::invalid_argument("change_cost: length mismatch");
  if (static_cast<int>(s1.size()) > h.size())
    throw std::invalid_argument("change_cost: matrix too small");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < s1.size(); ++i) sum += h.h[s1[i]][s_star[i]];
  return sum;
}

ProximityValue proximity_profit(const Permutation& sa, const Permutation& sb,
                                const ProfitMatrix& c) {
  return proximity_abs(total_profit(c, sa), total_profit(c, sb));
}

Report restructure(const Permutation& s1, const Permutation& s2,
                   const ProfitMatrix& c2, const ChangeCostMatrix& h,
                   Budget budget, SearchMethod method,
                   ExchangeOptions options) {
  check_profit(c2);
  check_costs(h);
  const int n = c2.size();
  if (h.size() != n)
    throw std::invalid_argument("profit and change matrices disagree on n");
  check_perm(s1, n, "s1");
  check_perm(s2, n, "s2");
  if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
  if (method == SearchMethod::exact && n > 10)
    throw std::invalid_argument("exact search supports n <= 10");

  const std::int64_t goal_profit = total_profit(c2, s2);
  const Candidate found =
      method == SearchMethod::exact
          ? search_exact(s1, c2, h, budget, goal_profit)
          : search_exchange(s1, c2, h, budget, goal_profit, options);

  Report report;
  report.method =
      method == SearchMethod::exact ? Method::exact : Method::local;
  report.feasible = true;  // s1 itself costs nothing
  report.s_star = found.perm;
  report.delta = moves_between(s1, found.perm);
  report.change_cost = found.cost;
  report.objective_stage2 = total_profit(c2, found.perm);
  report.proximity = proximity_abs(report.objective_stage2, goal_profit);
  return report;
}

Permutation from_one_based(const std::vector<int>& labels) {
  Permutation s;
  s.reserve(labels.size());
  for (int label : labels) s.push_back(label - 1);
  return s;
}

std::vector<int> to_one_based(const Permutation& s) {
  std::vector<int> labels;
  labels.reserve(s.size());
  for (int pos : s) labels.push_back(pos + 1);
  return labels;
}

}  // namespace restruct::assignment
