#include "restruct/knapsack.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace restruct::knapsack {

const Item* Instance::find(ElementId id) const {
  for (const Item& item : items)
    if (item.id == id) return &item;
  return nullptr;
}

namespace {

std::int64_t stage_profit(const Item& item, Stage stage) {
  return stage == Stage::one ? item.c1 : item.c2;
}
std::int64_t stage_weight(const Item& item, Stage stage) {
  return stage == Stage::one ? item.a1 : item.a2;
}

void check_instance(const Instance& instance) {
  IdSet ids;
  for (const Item& item : instance.items) {
    if (item.id < 0) throw std::invalid_argument("element ids must be >= 0");
    if (item.c1 < 0 || item.c2 < 0 || item.a1 < 0 || item.a2 < 0 ||
        item.cost.h_minus < 0 || item.cost.h_plus < 0)
      throw std::invalid_argument("item data must be nonnegative");
    ids.push_back(item.id);
  }
  if (canonical_ids(ids).size() != ids.size())
    throw std::invalid_argument("item ids must be distinct");
  if (instance.b1 < 0 || instance.b2 < 0)
    throw std::invalid_argument("capacities must be >= 0");
}

void check_membership(const Instance& instance, const Solution& s,
                      const char* name) {
  for (ElementId id : s)
    if (instance.find(id) == nullptr)
      throw std::invalid_argument(std::string(name) +
                                  " references unknown element " +
                                  std::to_string(id));
}

// One decision variable of the two-budget DP.
struct EngineItem {
  ElementId id = 0;
  bool in_s1 = false;
  bool changeable = true;
  std::int64_t profit = 0;   // earned if the element ends up selected
  std::int64_t weight = 0;   // capacity consumed if selected
  std::int64_t del_cost = 0; // change spent if an S1 element is dropped
  std::int64_t add_cost = 0; // change spent if an outside element is added
};

struct Cell {
  std::int64_t profit = -1;  // -1 marks an unreachable state
  std::int64_t change = 0;
};

bool better(const Cell& a, const Cell& b) {
  if (a.profit != b.profit) return a.profit > b.profit;
  return a.change < b.change;
}

// Suffix DP over (remaining capacity, remaining change budget). Layer i
// holds the best (max profit, then min change cost) achievable by items
// i..n-1. Reconstruction walks forward and, when selecting or skipping an
// element are equally good, prefers the branch that yields the
// lexicographically smallest selected-id set: skipping wins only when the
// entire remaining suffix can optimally stay unselected, because any later
// selection would start the sequence with a larger id.
class Engine {
 public:
  Engine(std::vector<EngineItem> items, std::int64_t capacity, Budget budget)
      : items_(std::move(items)) {
    if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
    if (capacity < 0) throw std::invalid_argument("capacity must be >= 0");
    std::sort(items_.begin(), items_.end(),
              [](const EngineItem& a, const EngineItem& b) {
                return a.id < b.id;
              });
    std::int64_t weight_sum = 0;
    std::int64_t spend_sum = 0;
    for (const EngineItem& it : items_) {
      weight_sum += it.weight;
      if (it.changeable)
        spend_sum += it.in_s1 ? it.del_cost : it.add_cost;
    }
    wcap_ = std::min(capacity, weight_sum);
    hcap_ = std::min(budget.h_hat, spend_sum);
    const std::size_t cells = static_cast<std::size_t>(items_.size() + 1) *
                              static_cast<std::size_t>(wcap_ + 1) *
                              static_cast<std::size_t>(hcap_ + 1);
    if (cells > (std::size_t{1} << 24))
      throw std::invalid_argument("instance too large for exact table");
  }

  // Returns the optimal selected-id set, or nullopt when no subset meets
  // both constraints.
  std::optional<Solution> solve() {
    build_tables();
    const Cell root = table_[index(0, wcap_, hcap_)];
    if (root.profit < 0) return std::nullopt;
    return reconstruct(root);
  }

 private:
  std::size_t index(std::size_t layer, std::int64_t w, std::int64_t h) const {
    return (layer * static_cast<std::size_t>(wcap_ + 1) +
            static_cast<std::size_t>(w)) *
               static_cast<std::size_t>(hcap_ + 1) +
           static_cast<std::size_t>(h);
  }

  void build_tables() {
    const std::size_t n = items_.size();
    table_.assign((n + 1) * static_cast<std::size_t>(wcap_ + 1) *
                      static_cast<std::size_t>(hcap_ + 1),
                  Cell{});
    drop_all_ok_.assign(n + 1, true);
    drop_all_cost_.assign(n + 1, 0);
    for (std::size_t w = 0; w <= static_cast<std::size_t>(wcap_); ++w)
      for (std::size_t h = 0; h <= static_cast<std::size_t>(hcap_); ++h)
        table_[index(n, w, h)] = Cell{0, 0};
    for (std::size_t i = n; i-- > 0;) {
      const EngineItem& it = items_[i];
      drop_all_ok_[i] = drop_all_ok_[i + 1] && !(it.in_s1 && !it.changeable);
      drop_all_cost_[i] =
          drop_all_cost_[i + 1] +
          ((it.in_s1 && it.changeable) ? it.del_cost : 0);
      for (std::int64_t w = 0; w <= wcap_; ++w) {
        for (std::int64_t h = 0; h <= hcap_; ++h) {
          Cell best{};  // unreachable
          auto consider = [&](std::int64_t dw, std::int64_t dh,
                              std::int64_t dp) {
            if (dw > w || dh > h) return;
            const Cell& next = table_[index(i + 1, w - dw, h - dh)];
            if (next.profit < 0) return;
            Cell candidate{next.profit + dp, next.change + dh};
            if (best.profit < 0 || better(candidate, best)) best = candidate;
          };
          if (it.in_s1) {
            consider(it.weight, 0, it.profit);                    // keep
            if (it.changeable) consider(0, it.del_cost, 0);       // drop
          } else {
            consider(0, 0, 0);                                    // skip
            if (it.changeable)
              consider(it.weight, it.add_cost, it.profit);        // add
          }
          table_[index(i, w, h)] = best;
        }
      }
    }
  }

  Solution reconstruct(Cell root) const {
    Solution selected;
    std::int64_t w = wcap_;
    std::int64_t h = hcap_;
    std::int64_t profit_left = root.profit;
    std::int64_t change_left = root.change;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      const EngineItem& it = items_[i];
      const auto matches = [&](std::int64_t dw, std::int64_t dh,
                               std::int64_t dp) {
        if (dw > w || dh > h) return false;
        const Cell& next = table_[index(i + 1, w - dw, h - dh)];
        return next.profit >= 0 && next.profit == profit_left - dp &&
               next.change == change_left - dh;
      };
      const std::int64_t din = it.in_s1 ? 0 : it.add_cost;
      const std::int64_t dout = it.in_s1 ? it.del_cost : 0;
      const bool in_allowed = it.in_s1 || it.changeable;
      const bool out_allowed = !it.in_s1 || it.changeable;
      const bool in_ok = in_allowed && matches(it.weight, din, it.profit);
      const bool out_ok = out_allowed && matches(0, dout, 0);
      bool take;
      if (in_ok && out_ok) {
        // Both optimal: skip only if the whole remaining suffix can stay
        // unselected at the same value, which makes the current set a
        // prefix of the selecting branch's set.
        take = !(profit_left == 0 && drop_all_ok_[i + 1] &&
                 change_left - dout == drop_all_cost_[i + 1]);
      } else {
        take = in_ok;
      }
      if (take) {
        selected.push_back(it.id);
        w -= it.weight;
        h -= din;
        profit_left -= it.profit;
        change_left -= din;
      } else {
        h -= dout;
        change_left -= dout;
      }
    }
    return selected;
  }

  std::vector<EngineItem> items_;
  std::int64_t wcap_ = 0;
  std::int64_t hcap_ = 0;
  std::vector<Cell> table_;
  std::vector<bool> drop_all_ok_;
  std::vector<std::int64_t> drop_all_cost_;
};

std::map<ElementId, CostPair> cost_map(const Instance& instance) {
  std::map<ElementId, CostPair> costs;
  for (const Item& item : instance.items) costs[item.id] = item.cost;
  return costs;
}

Report make_report(const Instance& instance, const Solution& s1,
                   const std::optional<Solution>& s2, Method method,
                   const std::optional<Solution>& result) {
  Report report;
  report.method = method;
  report.feasible = result.has_value();
  report.s_star = result.value_or(canonical_ids(s1));
  report.delta = delta_of(canonical_ids(s1), report.s_star);
  report.change_cost = change_cost(report.delta, cost_map(instance));
  report.objective_stage2 = profit(instance, report.s_star, Stage::two);
  const Solution goal =
      s2.has_value() ? canonical_ids(*s2) : solve_base(instance, Stage::two);
  report.proximity = proximity_abs(report.objective_stage2,
                                   profit(instance, goal, Stage::two));
  return report;
}

}  // namespace

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

Solution solve_base(const Instance& instance, Stage stage) {
  check_instance(instance);
  std::vector<EngineItem> items;
  for (const Item& item : instance.items)
    items.push_back({item.id, false, true, stage_profit(item, stage),
                     stage_weight(item, stage), 0, 0});
  Engine engine(std::move(items),
                stage == Stage::one ? instance.b1 : instance.b2, Budget{0});
  return *engine.solve();  // all-skip is always feasible
}

Report restructure_masked(const Instance& instance, const Solution& s1,
                          const std::optional<Solution>& s2, Budget budget,
                          const IdSet& changeable) {
  check_instance(instance);
  check_membership(instance, s1, "s1");
  if (s2) check_membership(instance, *s2, "s2");
  check_membership(instance, changeable, "changeable set");
  const IdSet inside = canonical_ids(s1);
  const IdSet allowed = canonical_ids(changeable);
  std::vector<EngineItem> items;
  for (const Item& item : instance.items) {
    EngineItem e;
    e.id = item.id;
    e.in_s1 = std::binary_search(inside.begin(), inside.end(), item.id);
    e.changeable = std::binary_search(allowed.begin(), allowed.end(), item.id);
    e.profit = item.c2;
    e.weight = item.a2;
    e.del_cost = item.cost.h_minus;
    e.add_cost = item.cost.h_plus;
    items.push_back(e);
  }
  Engine engine(std::move(items), instance.b2, budget);
  return make_report(instance, inside, s2, Method::exact, engine.solve());
}

Report restructure_exact(const Instance& instance, const Solution& s1,
                         const std::optional<Solution>& s2, Budget budget) {
  IdSet all;
  for (const Item& item : instance.items) all.push_back(item.id);
  return restructure_masked(instance, s1, s2, budget, all);
}

std::vector<heuristics::ElementProfile> stage2_profiles(
    const Instance& instance) {
  std::vector<heuristics::ElementProfile> profiles;
  for (const Item& item : instance.items)
    profiles.push_back({item.id, item.c2, item.a2, item.cost});
  return profiles;
}

Report restructure_reduced(const Instance& instance, const Solution& s1,
                           const std::optional<Solution>& s2, Budget budget,
                           int candidate_count) {
  const auto ranking = heuristics::rank_change_candidates(
      stage2_profiles(instance), s1, candidate_count);
  IdSet changeable = ranking.deletion_candidates;
  changeable.insert(changeable.end(), ranking.addition_candidates.begin(),
                    ranking.addition_candidates.end());
  Report report = restructure_masked(instance, s1, s2, budget,
                                     canonical_ids(changeable));
  report.method = Method::greedy;
  return report;
}

}  // namespace restruct::knapsack
