#include "restruct/multichoice.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace restruct::multichoice {

namespace {

constexpr ElementId kEmptySlot = std::numeric_limits<ElementId>::max();

std::int64_t stage_profit(const Item& item, Stage stage) {
  return stage == Stage::one ? item.c1 : item.c2;
}
std::int64_t stage_weight(const Item& item, Stage stage) {
  return stage == Stage::one ? item.a1 : item.a2;
}

void check_instance(const Instance& instance) {
  IdSet all;
  for (const Item& item : instance.items) {
    if (item.id < 0) throw std::invalid_argument("element ids must be >= 0");
    if (item.c1 < 0 || item.c2 < 0 || item.a1 < 0 || item.a2 < 0 ||
        item.cost.h_minus < 0 || item.cost.h_plus < 0)
      throw std::invalid_argument("item data must be nonnegative");
    all.push_back(item.id);
  }
  all = canonical_ids(all);
  if (all.size() != instance.items.size())
    throw std::invalid_argument("item ids must be distinct");
  IdSet grouped;
  for (const IdSet& group : instance.groups)
    grouped.insert(grouped.end(), group.begin(), group.end());
  std::sort(grouped.begin(), grouped.end());
  if (std::adjacent_find(grouped.begin(), grouped.end()) != grouped.end())
    throw std::invalid_argument("groups must be pairwise disjoint");
  if (grouped != all)
    throw std::invalid_argument("groups must partition the element set");
  if (instance.b1 < 0 || instance.b2 < 0)
    throw std::invalid_argument("capacities must be >= 0");
  if (instance.changeable)
    for (ElementId id : *instance.changeable)
      if (instance.find(id) == nullptr)
        throw std::invalid_argument("changeable set references unknown element " +
                                    std::to_string(id));
}

void check_solution(const Instance& instance, const Solution& s,
                    const char* name) {
  const auto violations = solution_violations(instance, s);
  if (!violations.empty())
    throw std::invalid_argument(std::string(name) + ": " + violations.front());
}

bool may_change(const Instance& instance, ElementId id) {
  if (!instance.changeable) return true;
  return std::binary_search(instance.changeable->begin(),
                            instance.changeable->end(), id);
}

// One way to fill a group slot: the chosen id (kEmptySlot for none) plus its
// capacity, change-cost, and profit increments. Options are kept sorted by
// key so DP reconstruction yields the canonical group-wise smallest choice.
struct Option {
  ElementId key = kEmptySlot;
  std::int64_t dw = 0;
  std::int64_t dh = 0;
  std::int64_t dp = 0;
};

// Base solving ignores change costs and the restricted-mode list: every
// group may stay empty or pick any item for free.
std::vector<std::vector<Option>> base_options(const Instance& instance,
                                              Stage stage) {
  std::vector<std::vector<Option>> per_group;
  for (const IdSet& group : instance.groups) {
    std::vector<Option> options;
    options.push_back({kEmptySlot, 0, 0, 0});
    for (ElementId id : group) {
      const Item& item = *instance.find(id);
      options.push_back(
          {id, stage_weight(item, stage), 0, stage_profit(item, stage)});
    }
    std::sort(options.begin(), options.end(),
              [](const Option& a, const Option& b) { return a.key < b.key; });
    per_group.push_back(std::move(options));
  }
  return per_group;
}

std::vector<std::vector<Option>> change_options(const Instance& instance,
                                                const IdSet& s1) {
  const Stage stage = Stage::two;
  std::vector<std::vector<Option>> per_group;
  for (const IdSet& group : instance.groups) {
    ElementId current = kEmptySlot;
    for (ElementId id : group)
      if (std::binary_search(s1.begin(), s1.end(), id)) current = id;
    std::vector<Option> options;
    if (current != kEmptySlot) {
      const Item& kept = *instance.find(current);
      options.push_back({current, stage_weight(kept, stage), 0,
                         stage_profit(kept, stage)});
      if (may_change(instance, current)) {
        options.push_back({kEmptySlot, 0, kept.cost.h_minus, 0});
        for (ElementId id : group) {
          if (id == current || !may_change(instance, id)) continue;
          const Item& item = *instance.find(id);
          options.push_back({id, stage_weight(item, stage),
                             kept.cost.h_minus + item.cost.h_plus,
                             stage_profit(item, stage)});
        }
      }
    } else {
      options.push_back({kEmptySlot, 0, 0, 0});
      for (ElementId id : group) {
        if (!may_change(instance, id)) continue;
        const Item& item = *instance.find(id);
        options.push_back({id, stage_weight(item, stage), item.cost.h_plus,
                           stage_profit(item, stage)});
      }
    }
    std::sort(options.begin(), options.end(),
              [](const Option& a, const Option& b) { return a.key < b.key; });
    per_group.push_back(std::move(options));
  }
  return per_group;
}

struct Cell {
  std::int64_t profit = -1;
  std::int64_t change = 0;
};

bool better(const Cell& a, const Cell& b) {
  if (a.profit != b.profit) return a.profit > b.profit;
  return a.change < b.change;
}

// Groups x capacity x change-budget table, suffix form, with group-wise
// canonical reconstruction.
Solution run_dp(const std::vector<std::vector<Option>>& groups,
                std::int64_t capacity, Budget budget, bool* feasible) {
  if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
  std::int64_t wmax = 0;
  std::int64_t hmax = 0;
  for (const auto& options : groups) {
    std::int64_t w = 0, h = 0;
    for (const Option& o : options) {
      w = std::max(w, o.dw);
      h = std::max(h, o.dh);
    }
    wmax += w;
    hmax += h;
  }
  const std::int64_t wcap = std::min(capacity, wmax);
  const std::int64_t hcap = std::min(budget.h_hat, hmax);
  const std::size_t m = groups.size();
  const std::size_t stride_w = static_cast<std::size_t>(wcap + 1);
  const std::size_t stride_h = static_cast<std::size_t>(hcap + 1);
  if ((m + 1) * stride_w * stride_h > (std::size_t{1} << 24))
    throw std::invalid_argument("instance too large for exact table");
  std::vector<Cell> table((m + 1) * stride_w * stride_h);
  auto cell = [&](std::size_t g, std::int64_t w, std::int64_t h) -> Cell& {
    return table[(g * stride_w + static_cast<std::size_t>(w)) * stride_h +
                 static_cast<std::size_t>(h)];
  };
  for (std::int64_t w = 0; w <= wcap; ++w)
    for (std::int64_t h = 0; h <= hcap; ++h) cell(m, w, h) = Cell{0, 0};
  for (std::size_t g = m; g-- > 0;) {
    for (std::int64_t w = 0; w <= wcap; ++w) {
      for (std::int64_t h = 0; h <= hcap; ++h) {
        Cell best{};
        for (const Option& o : groups[g]) {
          if (o.dw > w || o.dh > h) continue;
          const Cell& next = cell(g + 1, w - o.dw, h - o.dh);
          if (next.profit < 0) continue;
          Cell candidate{next.profit + o.dp, next.change + o.dh};
          if (best.profit < 0 || better(candidate, best)) best = candidate;
        }
        cell(g, w, h) = best;
      }
    }
  }
  const Cell root = cell(0, wcap, hcap);
  if (root.profit < 0) {
    *feasible = false;
    return {};
  }
  *feasible = true;
  Solution selected;
  std::int64_t w = wcap, h = hcap;
  std::int64_t profit_left = root.profit, change_left = root.change;
  for (std::size_t g = 0; g < m; ++g) {
    for (const Option& o : groups[g]) {
      if (o.dw > w || o.dh > h) continue;
      const Cell& next = cell(g + 1, w - o.dw, h - o.dh);
      if (next.profit < 0 || next.profit != profit_left - o.dp ||
          next.change != change_left - o.dh)
        continue;
      if (o.key != kEmptySlot) selected.push_back(o.key);
      w -= o.dw;
      h -= o.dh;
      profit_left -= o.dp;
      change_left -= o.dh;
      break;
    }
  }
  return canonical_ids(selected);
}

std::map<ElementId, CostPair> cost_map(const Instance& instance) {
  std::map<ElementId, CostPair> costs;
  for (const Item& item : instance.items) costs[item.id] = item.cost;
  return costs;
}

}  // namespace

const Item* Instance::find(ElementId id) const {
  for (const Item& item : items)
    if (item.id == id) return &item;
  return nullptr;
}

int Instance::group_of(ElementId id) const {
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (ElementId member : groups[g])
      if (member == id) return static_cast<int>(g);
  return -1;
}

std::int64_t profit(const Instance& instance, const Solution& s, Stage stage) {
  std::int64_t total = 0;
  for (ElementId id : s) {
    const Item* item = instance.find(id);
    if (item == nullptr)
      throw std::invalid_argument("unknown element " + std::to_string(id));
    total += stage_profit(*item, stage);
  }
  return total;
}

std::int64_t weight(const Instance& instance, const Solution& s, Stage stage) {
  std::int64_t total = 0;
  for (ElementId id : s) {
    const Item* item = instance.find(id);
    if (item == nullptr)
      throw std::invalid_argument("unknown element " + std::to_string(id));
    total += stage_weight(*item, stage);
  }
  return total;
}

std::vector<std::string> solution_violations(const Instance& instance,
                                             const Solution& s) {
  std::vector<std::string> violations;
  std::vector<int> picks(instance.groups.size(), 0);
  for (ElementId id : s) {
    const int g = instance.group_of(id);
    if (g < 0) {
      violations.push_back("solution references unknown element " +
                           std::to_string(id));
      continue;
    }
    if (++picks[static_cast<std::size_t>(g)] == 2)
      violations.push_back("group " + std::to_string(g) +
                           " has more than one selected element");
  }
  return violations;
}

Solution solve_base(const Instance& instance, Stage stage) {
  check_instance(instance);
  bool feasible = false;
  Solution result = run_dp(base_options(instance, stage),
                           stage == Stage::one ? instance.b1 : instance.b2,
                           Budget{0}, &feasible);
  return result;  // empty selection is always feasible
}

Report restructure_exact(const Instance& instance, const Solution& s1,
                         const std::optional<Solution>& s2, Budget budget) {
  check_instance(instance);
  check_solution(instance, s1, "s1");
  if (s2) check_solution(instance, *s2, "s2");
  const IdSet inside = canonical_ids(s1);
  bool feasible = false;
  Solution s_star = run_dp(change_options(instance, inside),
                           instance.b2, budget, &feasible);
  Report report;
  report.method = Method::exact;
  report.feasible = feasible;
  report.s_star = feasible ? s_star : inside;
  report.delta = delta_of(inside, report.s_star);
  report.change_cost = change_cost(report.delta, cost_map(instance));
  report.objective_stage2 = profit(instance, report.s_star, Stage::two);
  const Solution goal =
      s2.has_value() ? canonical_ids(*s2) : solve_base(instance, Stage::two);
  report.proximity = proximity_abs(report.objective_stage2,
                                   profit(instance, goal, Stage::two));
  return report;
}

std::vector<Solution> enumerate_optima(const Instance& instance,
                                       const Solution& s1, Budget budget) {
  check_instance(instance);
  check_solution(instance, s1, "s1");
  const IdSet inside = canonical_ids(s1);
  const auto groups = change_options(instance, inside);
  std::size_t combos = 1;
  for (const auto& options : groups) {
    combos *= options.size();
    if (combos > (std::size_t{1} << 22))
      throw std::invalid_argument("group-choice product too large to enumerate");
  }
  std::int64_t best = -1;
  std::vector<Solution> optima;
  Solution current;
  // Two passes: find the best profit, then collect every selection that
  // attains it within both constraints.
  for (int pass = 0; pass < 2; ++pass) {
    auto dfs = [&](auto&& self, std::size_t g, std::int64_t w, std::int64_t h,
                   std::int64_t p) -> void {
      if (g == groups.size()) {
        if (pass == 0) {
          best = std::max(best, p);
        } else if (p == best) {
          optima.push_back(canonical_ids(current));
        }
        return;
      }
      for (const Option& o : groups[g]) {
        if (o.dw > w || o.dh > h) continue;
        if (o.key != kEmptySlot) current.push_back(o.key);
        self(self, g + 1, w - o.dw, h - o.dh, p + o.dp);
        if (o.key != kEmptySlot) current.pop_back();
      }
    };
    dfs(dfs, 0, instance.b2, budget.h_hat, 0);
  }
  return optima;
}

std::int64_t priorities_to_profits(std::int64_t priority) {
  if (priority < 1 || priority > 3)
    throw std::out_of_range("priority must lie in 1..3");
  return 4 - priority;
}

}  // namespace restruct::multichoice
