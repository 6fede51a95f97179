#include "restruct/heuristics.hpp"

#include <algorithm>
#include <stdexcept>

namespace restruct::heuristics {

bool operator<(const Rational& a, const Rational& b) {
  return a.num * b.den < b.num * a.den;
}

bool operator==(const Rational& a, const Rational& b) {
  return a.num * b.den == b.num * a.den;
}

namespace {

struct ScoredId {
  ElementId id;
  Rational score;
};

// Nonincreasing score, ascending id on ties.
void sort_by_score(std::vector<ScoredId>& v) {
  std::sort(v.begin(), v.end(), [](const ScoredId& a, const ScoredId& b) {
    if (!(a.score == b.score)) return b.score < a.score;
    return a.id < b.id;
  });
}

IdSet take_ids(const std::vector<ScoredId>& v, int k) {
  IdSet out;
  for (int i = 0; i < k && i < static_cast<int>(v.size()); ++i)
    out.push_back(v[i].id);
  return out;
}

}  // namespace

CandidateRanking rank_change_candidates(
    const std::vector<ElementProfile>& elements, const IdSet& s1, int k) {
  if (k < 0) throw std::invalid_argument("candidate count must be >= 0");
  const IdSet inside = canonical_ids(s1);
  std::vector<ScoredId> deletions;
  std::vector<ScoredId> additions;
  CandidateRanking ranking;
  for (const ElementProfile& e : elements) {
    const bool in_s1 =
        std::binary_search(inside.begin(), inside.end(), e.id);
    Rational score;
    if (in_s1) {
      score = {-e.profit2, e.cost.h_minus + 1};
      deletions.push_back({e.id, score});
    } else {
      score = {e.profit2, (e.cost.h_plus + 1) * (e.weight2 + 1)};
      additions.push_back({e.id, score});
    }
    ranking.scores[e.id] = score;
  }
  sort_by_score(deletions);
  sort_by_score(additions);
  ranking.deletion_candidates = take_ids(deletions, k);
  ranking.addition_candidates = take_ids(additions, k);
  return ranking;
}

namespace {

// Ratio order: gain/cost compared by cross-multiplication; ties prefer
// smaller cost, then lexicographically smaller element list.
bool better_ratio(const ChangeOperation& a, const ChangeOperation& b) {
  const std::int64_t lhs = a.gain * b.cost;
  const std::int64_t rhs = b.gain * a.cost;
  if (lhs != rhs) return lhs > rhs;
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.elements < b.elements;
}

}  // namespace

std::vector<ChangeOperation> greedy_restructure(
    const std::vector<ChangeOperation>& operations, Budget budget) {
  if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
  std::vector<bool> used(operations.size(), false);
  std::int64_t remaining = budget.h_hat;
  std::vector<std::size_t> picked;
  for (;;) {
    std::size_t best = operations.size();
    for (std::size_t i = 0; i < operations.size(); ++i) {
      const ChangeOperation& op = operations[i];
      if (used[i] || op.gain <= 0 || op.cost > remaining) continue;
      if (best == operations.size() || better_ratio(op, operations[best]))
        best = i;
    }
    if (best == operations.size()) break;
    used[best] = true;
    remaining -= operations[best].cost;
    picked.push_back(best);
  }
  std::sort(picked.begin(), picked.end());
  std::vector<ChangeOperation> selected;
  for (std::size_t i : picked) selected.push_back(operations[i]);
  return selected;
}

std::vector<ChangeOperation> best_operation_subset(
    const std::vector<ChangeOperation>& operations, Budget budget) {
  if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
  if (operations.size() > 24)
    throw std::invalid_argument("operation subset enumeration capped at 24");
  const std::uint32_t limit = 1u << operations.size();
  std::int64_t best_gain = 0;
  std::int64_t best_cost = 0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::int64_t gain = 0;
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < operations.size(); ++i) {
      if (mask & (1u << i)) {
        gain += operations[i].gain;
        cost += operations[i].cost;
      }
    }
    if (cost > budget.h_hat) continue;
    if (gain > best_gain || (gain == best_gain && cost < best_cost) ||
        (gain == best_gain && cost == best_cost && mask < best_mask)) {
      best_gain = gain;
      best_cost = cost;
      best_mask = mask;
    }
  }
  std::vector<ChangeOperation> selected;
  for (std::size_t i = 0; i < operations.size(); ++i)
    if (best_mask & (1u << i)) selected.push_back(operations[i]);
  return selected;
}

std::int64_t total_cost(const std::vector<ChangeOperation>& operations) {
  std::int64_t sum = 0;
  for (const auto& op : operations) sum += op.cost;
  return sum;
}

std::int64_t total_gain(const std::vector<ChangeOperation>& operations) {
  std::int64_t sum = 0;
  for (const auto& op : operations) sum += op.gain;
  return sum;
}

}  // namespace restruct::heuristics
