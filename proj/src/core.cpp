#include "restruct/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace restruct {

std::string to_string(Method m) {
  switch (m) {
    case Method::exact:
      return "exact";
    case Method::greedy:
      return "greedy";
    case Method::local:
      return "local";
  }
  return "exact";
}

std::string to_string(ProximityMode m) {
  return m == ProximityMode::objective ? "objective" : "structural";
}

MissingCostError::MissingCostError(ElementId element)
    : std::runtime_error("no change cost registered for element " +
                         std::to_string(element)),
      id(element) {}

IdSet canonical_ids(IdSet ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

DeltaPlan delta_of(const IdSet& s1, const IdSet& s_star) {
  const IdSet a = canonical_ids(s1);
  const IdSet b = canonical_ids(s_star);
  DeltaPlan delta;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(delta.deleted));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(delta.added));
  return delta;
}

IdSet apply_delta(const IdSet& s1, const DeltaPlan& delta) {
  const IdSet a = canonical_ids(s1);
  IdSet kept;
  std::set_difference(a.begin(), a.end(), delta.deleted.begin(),
                      delta.deleted.end(), std::back_inserter(kept));
  IdSet result;
  std::set_union(kept.begin(), kept.end(), delta.added.begin(),
                 delta.added.end(), std::back_inserter(result));
  return result;
}

std::int64_t change_cost(const DeltaPlan& delta,
                         const std::map<ElementId, CostPair>& costs) {
  std::int64_t total = 0;
  for (ElementId id : delta.deleted) {
    auto it = costs.find(id);
    if (it == costs.end()) throw MissingCostError(id);
    total += it->second.h_minus;
  }
  for (ElementId id : delta.added) {
    auto it = costs.find(id);
    if (it == costs.end()) throw MissingCostError(id);
    total += it->second.h_plus;
  }
  return total;
}

ProximityValue proximity_abs(std::int64_t f_a, std::int64_t f_b) {
  return {std::abs(f_a - f_b), ProximityMode::objective};
}

}  // namespace restruct
