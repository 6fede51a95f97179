#include <algorithm>

#include "restruct/io.hpp"

// Per-family dispatch behind the CLI subcommands, plus the independent
// report verifier.

namespace restruct::io {

namespace {

using knapsack::Stage;

Budget effective_budget(Budget file_budget,
                        const std::optional<std::int64_t>& override_value) {
  const std::int64_t value = override_value.value_or(file_budget.h_hat);
  if (value < 0) throw SchemaError({"budget must be >= 0"});
  return Budget{value};
}

void reject_proximity_override(const CommandOptions& options) {
  if (options.proximity)
    throw SchemaError(
        {"proximity mode is fixed to objective for this family"});
}

[[noreturn]] void unsupported_method(const char* family) {
  throw SchemaError({std::string("method not supported for ") + family});
}

json ids_json(const IdSet& ids) {
  json arr = json::array();
  for (ElementId id : canonical_ids(ids)) arr.push_back(id);
  return arr;
}

json edges_json(const trees::EdgeSet& edges) {
  json arr = json::array();
  for (const trees::Edge& e : trees::canonical_edges(edges))
    arr.push_back(json::array({e.u, e.v}));
  return arr;
}

std::map<ElementId, CostPair> cost_map(const std::vector<knapsack::Item>& items) {
  std::map<ElementId, CostPair> costs;
  for (const auto& item : items) costs[item.id] = item.cost;
  return costs;
}

// --- verify helpers --------------------------------------------------------

struct Verifier {
  VerifyResult result;
  const json* report;

  bool has(const std::string& key) const { return report->contains(key); }

  std::optional<std::int64_t> get_int(const std::string& key) {
    if (!report->contains(key) || !report->at(key).is_number_integer()) {
      fail("report field '" + key + "' missing or not an integer");
      return std::nullopt;
    }
    return report->at(key).get<std::int64_t>();
  }

  void fail(const std::string& message) {
    result.ok = false;
    result.failures.push_back(message);
  }

  void expect(bool ok, const std::string& message) {
    if (!ok) fail(message);
  }

  void expect_eq(std::optional<std::int64_t> reported, std::int64_t actual,
                 const std::string& what) {
    if (reported && *reported != actual)
      fail(what + ": report says " + std::to_string(*reported) +
           ", recomputed " + std::to_string(actual));
  }
};

IdSet report_ids(Verifier& v, const std::string& key) {
  if (!v.report->contains(key) || !v.report->at(key).is_array()) {
    v.fail("report field '" + key + "' missing or not an array");
    return {};
  }
  IdSet ids;
  for (const auto& entry : v.report->at(key)) {
    if (!entry.is_number_integer()) {
      v.fail("report field '" + key + "' must hold integers");
      return {};
    }
    ids.push_back(entry.get<std::int64_t>());
  }
  return canonical_ids(ids);
}

trees::EdgeSet report_edges(Verifier& v, const std::string& key) {
  trees::EdgeSet edges;
  if (!v.report->contains(key) || !v.report->at(key).is_array()) {
    v.fail("report field '" + key + "' missing or not an array");
    return edges;
  }
  for (const auto& entry : v.report->at(key)) {
    if (!entry.is_array() || entry.size() != 2 ||
        !entry[0].is_number_integer() || !entry[1].is_number_integer()) {
      v.fail("report field '" + key + "' must hold [u, v] pairs");
      return {};
    }
    edges.push_back(trees::make_edge(entry[0].get<std::int64_t>(),
                                     entry[1].get<std::int64_t>()));
  }
  return trees::canonical_edges(edges);
}

void check_budget_and_flag(Verifier& v, std::int64_t recomputed_cost,
                           Budget budget) {
  v.expect(recomputed_cost <= budget.h_hat,
           "change cost " + std::to_string(recomputed_cost) +
               " exceeds budget " + std::to_string(budget.h_hat));
  if (v.report->contains("feasible") && v.report->at("feasible").is_boolean() &&
      !v.report->at("feasible").get<bool>())
    v.fail("report declares itself infeasible");
}

ProximityMode report_mode(const json& report,
                          ProximityMode fallback = ProximityMode::objective) {
  if (!report.contains("proximity_mode") ||
      !report.at("proximity_mode").is_string())
    return fallback;
  return report.at("proximity_mode").get<std::string>() == "structural"
             ? ProximityMode::structural
             : ProximityMode::objective;
}

std::int64_t symdiff_size(const IdSet& a, const IdSet& b) {
  IdSet diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  return static_cast<std::int64_t>(diff.size());
}

// --- per-family verify ------------------------------------------------------

VerifyResult verify_knapsack(const KnapsackCase& c, const json& report,
                             Budget budget) {
  Verifier v{.result = {}, .report = &report};
  const IdSet s_star = report_ids(v, "s_star");
  if (!v.result.ok) return v.result;
  for (ElementId id : s_star)
    if (c.instance.find(id) == nullptr)
      v.fail("s_star references unknown element " + std::to_string(id));
  if (!v.result.ok) return v.result;

  const DeltaPlan delta = delta_of(c.s1, s_star);
  v.expect(report_ids(v, "deleted") == delta.deleted,
           "deleted set does not match s1 vs s_star");
  v.expect(report_ids(v, "added") == delta.added,
           "added set does not match s1 vs s_star");
  const std::int64_t cost = change_cost(delta, cost_map(c.instance.items));
  v.expect_eq(v.get_int("change_cost"), cost, "change_cost");
  v.expect(knapsack::weight(c.instance, s_star, Stage::two) <= c.instance.b2,
           "s_star exceeds the stage-2 capacity");
  const std::int64_t objective =
      knapsack::profit(c.instance, s_star, Stage::two);
  v.expect_eq(v.get_int("objective_stage2"), objective, "objective_stage2");
  if (c.s2) {
    const std::int64_t rho =
        report_mode(report) == ProximityMode::structural
            ? symdiff_size(s_star, *c.s2)
            : proximity_abs(objective,
                            knapsack::profit(c.instance, *c.s2, Stage::two))
                  .value;
    v.expect_eq(v.get_int("proximity"), rho, "proximity");
  }
  check_budget_and_flag(v, cost, budget);
  return v.result;
}

VerifyResult verify_multichoice(const MultiChoiceCase& c, const json& report,
                                Budget budget) {
  Verifier v{.result = {}, .report = &report};
  const IdSet s_star = report_ids(v, "s_star");
  if (!v.result.ok) return v.result;
  for (const auto& message :
       multichoice::solution_violations(c.instance, s_star))
    v.fail("s_star: " + message);
  if (!v.result.ok) return v.result;

  const DeltaPlan delta = delta_of(c.s1, s_star);
  v.expect(report_ids(v, "deleted") == delta.deleted,
           "deleted set does not match s1 vs s_star");
  v.expect(report_ids(v, "added") == delta.added,
           "added set does not match s1 vs s_star");
  std::map<ElementId, CostPair> costs;
  for (const auto& item : c.instance.items) costs[item.id] = item.cost;
  const std::int64_t cost = change_cost(delta, costs);
  v.expect_eq(v.get_int("change_cost"), cost, "change_cost");
  v.expect(
      multichoice::weight(c.instance, s_star, Stage::two) <= c.instance.b2,
      "s_star exceeds the stage-2 capacity");
  if (c.instance.changeable) {
    for (const auto* moved : {&delta.deleted, &delta.added})
      for (ElementId id : *moved)
        if (!std::binary_search(c.instance.changeable->begin(),
                                c.instance.changeable->end(), id))
          v.fail("element " + std::to_string(id) +
                 " changed although the instance froze it");
  }
  const std::int64_t objective =
      multichoice::profit(c.instance, s_star, Stage::two);
  v.expect_eq(v.get_int("objective_stage2"), objective, "objective_stage2");
  if (c.s2) {
    const std::int64_t rho =
        report_mode(report) == ProximityMode::structural
            ? symdiff_size(s_star, *c.s2)
            : proximity_abs(objective,
                            multichoice::profit(c.instance, *c.s2, Stage::two))
                  .value;
    v.expect_eq(v.get_int("proximity"), rho, "proximity");
  }
  check_budget_and_flag(v, cost, budget);
  return v.result;
}

VerifyResult verify_assignment(const AssignmentCase& c, const json& report,
                               Budget budget) {
  Verifier v{.result = {}, .report = &report};
  report_ids(v, "s_star");  // shape check only; ordering matters below
  if (!v.result.ok) return v.result;
  std::vector<int> raw;
  for (const auto& entry : report.at("s_star"))
    raw.push_back(entry.get<int>());
  const assignment::Permutation s_star = assignment::from_one_based(raw);
  if (s_star.size() != c.s1.size() || !assignment::is_permutation(s_star)) {
    v.fail("s_star is not a permutation of 1..n");
    return v.result;
  }
  const std::int64_t cost = assignment::change_cost(c.s1, s_star, c.h);
  v.expect_eq(v.get_int("change_cost"), cost, "change_cost");
  const std::int64_t objective = assignment::total_profit(c.c2, s_star);
  v.expect_eq(v.get_int("objective_stage2"), objective, "objective_stage2");
  if (c.s2)
    v.expect_eq(v.get_int("proximity"),
                assignment::proximity_profit(s_star, *c.s2, c.c2).value,
                "proximity");
  check_budget_and_flag(v, cost, budget);
  return v.result;
}

VerifyResult verify_spanning(const SpanningTreeCase& c, const json& report,
                             Budget budget) {
  Verifier v{.result = {}, .report = &report};
  const trees::SpanningTree s_star{report_edges(v, "s_star")};
  if (!v.result.ok) return v.result;
  for (const auto& message : trees::spanning_tree_violations(c.graph, s_star))
    v.fail("s_star: " + message);
  if (!v.result.ok) return v.result;

  const trees::EdgeDelta delta = trees::tree_delta(c.s1, s_star);
  v.expect(report_edges(v, "deleted") == delta.deleted,
           "deleted edges do not match s1 vs s_star");
  v.expect(report_edges(v, "added") == delta.added,
           "added edges do not match s1 vs s_star");
  const std::int64_t cost = trees::edge_change_cost(c.graph, c.s1, s_star);
  v.expect_eq(v.get_int("change_cost"), cost, "change_cost");
  if (c.s2)
    v.expect_eq(v.get_int("proximity"),
                trees::proximity_between(
                    c.graph, s_star, *c.s2,
                    report_mode(report, ProximityMode::structural)),
                "proximity");
  check_budget_and_flag(v, cost, budget);
  return v.result;
}

VerifyResult verify_steiner(const SteinerCase& c, const json& report,
                            Budget budget) {
  Verifier v{.result = {}, .report = &report};
  trees::SteinerTree s_star;
  if (!report.contains("s_star") || !report.at("s_star").is_object()) {
    v.fail("report field 's_star' missing or not an object");
    return v.result;
  }
  {
    const json& tree = report.at("s_star");
    Verifier inner{.result = {}, .report = &tree};
    s_star.steiner_used = report_ids(inner, "steiner");
    s_star.edges = report_edges(inner, "edges");
    if (!inner.result.ok) {
      v.result = inner.result;
      return v.result;
    }
  }
  for (const auto& message : trees::steiner_tree_violations(c.problem, s_star))
    v.fail("s_star: " + message);
  if (!v.result.ok) return v.result;

  const std::int64_t cost =
      trees::steiner_change_cost(c.problem, c.s1, s_star);
  v.expect_eq(v.get_int("change_cost"), cost, "change_cost");
  std::int64_t rho;
  if (report_mode(report, ProximityMode::structural) ==
      ProximityMode::structural) {
    trees::EdgeSet diff;
    std::set_symmetric_difference(s_star.edges.begin(), s_star.edges.end(),
                                  c.s2.edges.begin(), c.s2.edges.end(),
                                  std::back_inserter(diff));
    rho = static_cast<std::int64_t>(diff.size());
  } else {
    rho = std::abs(
        trees::tree_weight(c.problem.graph, trees::SpanningTree{s_star.edges}) -
        trees::tree_weight(c.problem.graph, trees::SpanningTree{c.s2.edges}));
  }
  v.expect_eq(v.get_int("proximity"), rho, "proximity");
  check_budget_and_flag(v, cost, budget);
  return v.result;
}

VerifyResult verify_access(const AccessPointScenario& c, const json& report,
                           Budget budget) {
  Verifier v{.result = {}, .report = &report};
  if (!report.contains("selected") || !report.at("selected").is_array()) {
    v.fail("report field 'selected' missing or not an array");
    return v.result;
  }
  std::int64_t cost = 0;
  std::int64_t gain = 0;
  std::vector<Reassignment> seen;
  for (const auto& entry : report.at("selected")) {
    if (!entry.is_object()) {
      v.fail("selected entries must be objects");
      return v.result;
    }
    Reassignment move;
    move.user = entry.value("user", -1);
    move.from_ap = entry.value("from", -1);
    move.to_ap = entry.value("to", -1);
    const bool known =
        std::find(c.reassignments.begin(), c.reassignments.end(), move) !=
        c.reassignments.end();
    if (!known) {
      v.fail("selected reconnection is not a candidate (user " +
             std::to_string(move.user) + ")");
      continue;
    }
    if (std::find(seen.begin(), seen.end(), move) != seen.end()) {
      v.fail("selected reconnection repeated (user " +
             std::to_string(move.user) + ")");
      continue;
    }
    seen.push_back(move);
    cost += c.find_op(move.user, move.from_ap)->h_minus +
            c.find_op(move.user, move.to_ap)->h_plus;
    gain += c.find_op(move.user, move.to_ap)->c;
  }
  v.expect_eq(v.get_int("change_cost"), cost, "change_cost");
  v.expect_eq(v.get_int("objective_stage2"), gain, "objective_stage2");
  check_budget_and_flag(v, cost, budget);
  return v.result;
}

}  // namespace

json run_solve(const InstanceFile& file, Stage stage) {
  return std::visit(
      [&](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, KnapsackCase>) {
          const auto solution = knapsack::solve_base(c.instance, stage);
          return json{{"problem", "knapsack"},
                      {"stage", stage == Stage::one ? 1 : 2},
                      {"solution", ids_json(solution)},
                      {"objective", knapsack::profit(c.instance, solution, stage)},
                      {"weight", knapsack::weight(c.instance, solution, stage)}};
        } else if constexpr (std::is_same_v<T, MultiChoiceCase>) {
          const auto solution = multichoice::solve_base(c.instance, stage);
          return json{
              {"problem", "multichoice"},
              {"stage", stage == Stage::one ? 1 : 2},
              {"solution", ids_json(solution)},
              {"objective", multichoice::profit(c.instance, solution, stage)},
              {"weight", multichoice::weight(c.instance, solution, stage)}};
        } else if constexpr (std::is_same_v<T, AssignmentCase>) {
          const auto& matrix = stage == Stage::one ? c.c1 : c.c2;
          const auto solution = assignment::solve_base(matrix);
          return json{{"problem", "assignment"},
                      {"stage", stage == Stage::one ? 1 : 2},
                      {"solution", assignment::to_one_based(solution)},
                      {"objective", assignment::total_profit(matrix, solution)}};
        } else if constexpr (std::is_same_v<T, SpanningTreeCase>) {
          const auto tree = trees::mst_base(c.graph);
          return json{{"problem", "spanning_tree"},
                      {"solution", edges_json(tree.edges)},
                      {"objective", trees::tree_weight(c.graph, tree)}};
        } else if constexpr (std::is_same_v<T, SteinerCase>) {
          throw SchemaError({"solve is not supported for steiner_tree; "
                             "use restructure"});
        } else {
          throw SchemaError({"solve is not supported for access_points; "
                             "use restructure"});
        }
      },
      file);
}

json run_restructure(const InstanceFile& file, const CommandOptions& options,
                     bool* feasible) {
  json out = std::visit(
      [&](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        const Budget budget = effective_budget(c.budget, options.budget);
        if constexpr (std::is_same_v<T, KnapsackCase>) {
          reject_proximity_override(options);
          knapsack::Report report;
          if (options.method == Method::exact)
            report = knapsack::restructure_exact(c.instance, c.s1, c.s2, budget);
          else if (options.method == Method::greedy)
            report = knapsack::restructure_reduced(c.instance, c.s1, c.s2,
                                                   budget, options.candidates);
          else
            unsupported_method("knapsack");
          return report_json(c, report);
        } else if constexpr (std::is_same_v<T, MultiChoiceCase>) {
          reject_proximity_override(options);
          if (options.method != Method::exact) unsupported_method("multichoice");
          return report_json(
              c, multichoice::restructure_exact(c.instance, c.s1, c.s2, budget));
        } else if constexpr (std::is_same_v<T, AssignmentCase>) {
          reject_proximity_override(options);
          if (options.method == Method::greedy) unsupported_method("assignment");
          const assignment::Permutation goal =
              c.s2 ? *c.s2 : assignment::solve_base(c.c2);
          const auto method = options.method == Method::exact
                                  ? assignment::SearchMethod::exact
                                  : assignment::SearchMethod::exchange;
          return report_json(
              c, assignment::restructure(c.s1, goal, c.c2, c.h, budget, method,
                                         {options.three_exchange}));
        } else if constexpr (std::is_same_v<T, SpanningTreeCase>) {
          if (options.method == Method::greedy)
            unsupported_method("spanning_tree");
          const ProximityMode mode =
              options.proximity.value_or(ProximityMode::structural);
          const trees::SpanningTree goal =
              c.s2 ? *c.s2 : trees::mst_base(c.graph);
          return report_json(
              c, trees::restructure_spanning(c.graph, c.s1, goal, budget, mode,
                                             options.method));
        } else if constexpr (std::is_same_v<T, SteinerCase>) {
          if (options.method != Method::exact)
            unsupported_method("steiner_tree");
          const ProximityMode mode =
              options.proximity.value_or(ProximityMode::structural);
          return report_json(
              c, trees::restructure_steiner(c.problem, c.s1, c.s2, budget, mode));
        } else {
          reject_proximity_override(options);
          if (options.method == Method::local)
            unsupported_method("access_points");
          return report_json(
              c, run_access_point_reassignment(c, budget, options.method));
        }
      },
      file);
  if (feasible != nullptr) *feasible = out.at("feasible").get<bool>();
  return out;
}

json run_diff(const InstanceFile& file) {
  return std::visit(
      [&](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, KnapsackCase> ||
                      std::is_same_v<T, MultiChoiceCase>) {
          if (!c.s2) throw SchemaError({"diff requires a goal solution s2"});
          const DeltaPlan delta = delta_of(c.s1, *c.s2);
          std::map<ElementId, CostPair> costs;
          for (const auto& item : c.instance.items) costs[item.id] = item.cost;
          return json{{"problem", to_string(problem_of(file))},
                      {"deleted", ids_json(delta.deleted)},
                      {"added", ids_json(delta.added)},
                      {"change_cost", change_cost(delta, costs)}};
        } else if constexpr (std::is_same_v<T, AssignmentCase>) {
          if (!c.s2) throw SchemaError({"diff requires a goal solution s2"});
          const auto diff = assignment::struct_diff(c.s1, *c.s2);
          json moves = json::array();
          for (std::size_t i = 0; i < c.s1.size(); ++i)
            if (c.s1[i] != (*c.s2)[i])
              moves.push_back(json{{"element", static_cast<int>(i) + 1},
                                   {"from", c.s1[i] + 1},
                                   {"to", (*c.s2)[i] + 1}});
          return json{{"problem", "assignment"},
                      {"struct_diff", diff},
                      {"moves", moves},
                      {"change_cost", assignment::change_cost(c.s1, *c.s2, c.h)}};
        } else if constexpr (std::is_same_v<T, SpanningTreeCase>) {
          if (!c.s2) throw SchemaError({"diff requires a goal solution s2"});
          const trees::EdgeDelta delta = trees::tree_delta(c.s1, *c.s2);
          return json{{"problem", "spanning_tree"},
                      {"deleted", edges_json(delta.deleted)},
                      {"added", edges_json(delta.added)},
                      {"change_cost",
                       trees::edge_change_cost(c.graph, c.s1, *c.s2)}};
        } else if constexpr (std::is_same_v<T, SteinerCase>) {
          const trees::EdgeDelta delta = trees::tree_delta(
              trees::SpanningTree{c.s1.edges}, trees::SpanningTree{c.s2.edges});
          const DeltaPlan vdelta =
              delta_of(c.s1.steiner_used, c.s2.steiner_used);
          return json{{"problem", "steiner_tree"},
                      {"deleted", edges_json(delta.deleted)},
                      {"added", edges_json(delta.added)},
                      {"steiner_removed", ids_json(vdelta.deleted)},
                      {"steiner_added", ids_json(vdelta.added)},
                      {"change_cost",
                       trees::steiner_change_cost(c.problem, c.s1, c.s2)}};
        } else {
          json ops = json::array();
          for (const Reassignment& move : c.reassignments) {
            const OpsEntry* from = c.find_op(move.user, move.from_ap);
            const OpsEntry* to = c.find_op(move.user, move.to_ap);
            ops.push_back(json{{"user", move.user},
                               {"from", move.from_ap},
                               {"to", move.to_ap},
                               {"cost", from->h_minus + to->h_plus},
                               {"gain", to->c}});
          }
          return json{{"problem", "access_points"}, {"operations", ops}};
        }
      },
      file);
}

VerifyResult run_verify(const InstanceFile& file, const json& report,
                        std::optional<std::int64_t> budget_override) {
  if (!report.is_object())
    return {false, {"report: expected a JSON object"}};
  if (report.contains("problem") && report.at("problem").is_string() &&
      report.at("problem").get<std::string>() != to_string(problem_of(file)))
    return {false,
            {"report problem tag does not match the instance"}};
  return std::visit(
      [&](const auto& c) -> VerifyResult {
        using T = std::decay_t<decltype(c)>;
        const Budget budget = effective_budget(c.budget, budget_override);
        if constexpr (std::is_same_v<T, KnapsackCase>)
          return verify_knapsack(c, report, budget);
        else if constexpr (std::is_same_v<T, MultiChoiceCase>)
          return verify_multichoice(c, report, budget);
        else if constexpr (std::is_same_v<T, AssignmentCase>)
          return verify_assignment(c, report, budget);
        else if constexpr (std::is_same_v<T, SpanningTreeCase>)
          return verify_spanning(c, report, budget);
        else if constexpr (std::is_same_v<T, SteinerCase>)
          return verify_steiner(c, report, budget);
        else
          return verify_access(c, report, budget);
      },
      file);
}

}  // namespace restruct::io
