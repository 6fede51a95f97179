#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Problem-family-independent vocabulary for solution restructuring: deltas
// between an initial solution S1 and a restructured solution S*, per-element
// change costs, change budgets, proximity to a goal solution S2, and the
// report every solver returns.
//
// All quantities are integers; solvers in this library never touch floating
// point. Values are immutable after construction and safe to share across
// threads.

namespace restruct {

using ElementId = std::int64_t;  // nonnegative label, unique within an instance
using IdSet = std::vector<ElementId>;  // sorted ascending, no duplicates

// Deletion cost h- and addition cost h+ of one element.
struct CostPair {
  std::int64_t h_minus = 0;
  std::int64_t h_plus = 0;
};

// Upper bound on total change cost.
struct Budget {
  std::int64_t h_hat = 0;
};

// The element changes that turn S1 into S*: deleted = S1 \ S*,
// added = S* \ S1. Both lists sorted ascending.
struct DeltaPlan {
  IdSet deleted;
  IdSet added;

  bool empty() const { return deleted.empty() && added.empty(); }
};

enum class ProximityMode { objective, structural };

// Closeness of two solutions: absolute objective gap, or symmetric-difference
// cardinality for structure-valued solutions. Always >= 0; 0 iff equivalent
// under the active mode.
struct ProximityValue {
  std::int64_t value = 0;
  ProximityMode mode = ProximityMode::objective;
};

enum class Method { exact, greedy, local };

std::string to_string(Method m);
std::string to_string(ProximityMode m);

// Raised by change_cost when an element has no cost entry.
class MissingCostError : public std::runtime_error {
 public:
  explicit MissingCostError(ElementId id);
  ElementId id;
};

// What every restructuring solver returns. `Solution` is family-specific;
// `Delta` defaults to an element-set delta but assignment uses a move list
// and trees use edge/vertex deltas.
template <typename Solution, typename Delta = DeltaPlan>
struct RestructureReport {
  Solution s_star{};
  Delta delta{};
  std::int64_t change_cost = 0;
  ProximityValue proximity{};
  std::int64_t objective_stage2 = 0;
  bool feasible = true;
  Method method = Method::exact;
};

// Normalizes an id list to sorted-unique form.
IdSet canonical_ids(IdSet ids);

// deleted = s1 \ s_star, added = s_star \ s1. Inputs need not be sorted.
DeltaPlan delta_of(const IdSet& s1, const IdSet& s_star);

// (s1 \ deleted) u added, canonical form. Re-applying delta_of(s1, s)
// to s1 yields s exactly.
IdSet apply_delta(const IdSet& s1, const DeltaPlan& delta);

// Sum of h- over deleted plus h+ over added elements.
// Throws MissingCostError if an element lacks a cost entry.
std::int64_t change_cost(const DeltaPlan& delta,
                         const std::map<ElementId, CostPair>& costs);

// |f_a - f_b| for two objective values under the same stage-2 objective.
ProximityValue proximity_abs(std::int64_t f_a, std::int64_t f_b);

}  // namespace restruct
