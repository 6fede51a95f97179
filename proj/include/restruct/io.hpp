#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "restruct/assignment.hpp"
#include "restruct/core.hpp"
#include "restruct/heuristics.hpp"
#include "restruct/knapsack.hpp"
#include "restruct/multichoice.hpp"
#include "restruct/trees.hpp"

// Instance and report serialization, bundled fixtures, verification of
// reports against instances, and the little pipeline behind the
// access-point reassignment scenario. File format: UTF-8 JSON with a
// `problem` discriminator and integer-only numerics; the canonical form
// sorts object keys and id lists, so save(load(x)) is byte-stable.

namespace restruct::io {

using nlohmann::json;

enum class Problem {
  knapsack,
  multichoice,
  assignment,
  spanning_tree,
  steiner_tree,
  access_points,
};

std::string to_string(Problem p);

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message);
};

// Semantic schema violations; collects every failed invariant.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct KnapsackCase {
  knapsack::Instance instance;
  knapsack::Solution s1;
  std::optional<knapsack::Solution> s2;
  Budget budget;
};

struct MultiChoiceCase {
  multichoice::Instance instance;
  multichoice::Solution s1;
  std::optional<multichoice::Solution> s2;
  Budget budget;
  std::map<ElementId, std::string> labels;  // optional display names
};

struct AssignmentCase {
  assignment::ProfitMatrix c1;
  assignment::ProfitMatrix c2;
  assignment::ChangeCostMatrix h;
  assignment::Permutation s1;
  std::optional<assignment::Permutation> s2;
  Budget budget;
};

struct SpanningTreeCase {
  trees::Graph graph;
  trees::SpanningTree s1;
  std::optional<trees::SpanningTree> s2;
  Budget budget;
};

struct SteinerCase {
  trees::SteinerProblem problem;
  trees::SteinerTree s1;
  trees::SteinerTree s2;  // goal tree is part of the input here
  Budget budget;
  std::map<ElementId, std::string> labels;
};

struct User {
  ElementId id = 0;
  std::int64_t x = 0, y = 0, z = 0, f = 0, r = 0;
};

struct AccessPoint {
  ElementId id = 0;
  std::int64_t x = 0, y = 0, z = 0, f = 0, n = 0, r = 0;
};

struct OpsEntry {
  ElementId user = 0;
  ElementId ap = 0;
  std::int64_t h_minus = 0, h_plus = 0, c = 0;
};

struct Reassignment {
  ElementId user = 0;
  ElementId from_ap = 0;
  ElementId to_ap = 0;
};

bool operator==(const Reassignment& a, const Reassignment& b);

// User/access-point reassignment scenario: a change zone of users near the
// region border, an expert table of change costs h-/h+ and integrated
// profits c per (user, access point), and the candidate reconnections.
// The geometric columns are carried for completeness; the pipeline only
// reads the ops table.
struct AccessPointScenario {
  std::vector<User> users;
  std::vector<AccessPoint> access_points;
  IdSet change_zone;
  std::vector<OpsEntry> ops_table;
  std::vector<Reassignment> reassignments;
  Budget budget;

  const OpsEntry* find_op(ElementId user, ElementId ap) const;
};

using InstanceFile =
    std::variant<KnapsackCase, MultiChoiceCase, AssignmentCase,
                 SpanningTreeCase, SteinerCase, AccessPointScenario>;

Problem problem_of(const InstanceFile& file);

// Parsing throws ParseError on malformed JSON or wrongly typed fields and
// SchemaError on violated invariants (every violation listed).
InstanceFile parse_instance(const json& j);
InstanceFile load_instance(const std::filesystem::path& path);
json to_json(const InstanceFile& file);  // canonical form
void save_instance(const InstanceFile& file, const std::filesystem::path& path);
std::string canonical_dump(const json& j);

// Reports (and other result payloads) are written in the same canonical
// form, so saved reports feed back into `verify` unchanged.
void save_report(const json& report, const std::filesystem::path& path);

// Bundled sample instances, constructed in memory.
std::vector<std::string> fixture_names();
InstanceFile fixture(const std::string& name);  // throws SchemaError on unknown

using ApReport =
    RestructureReport<std::vector<Reassignment>, std::vector<Reassignment>>;

// Builds one change operation per candidate reconnection (gain = c of the
// target access point, cost = h- of the current one plus h+ of the target)
// and picks the gain-maximal subset within the budget, exactly or greedily.
ApReport run_access_point_reassignment(const AccessPointScenario& scenario,
                                       Budget budget,
                                       Method method = Method::exact);

json report_json(const KnapsackCase& c, const knapsack::Report& report);
json report_json(const MultiChoiceCase& c, const multichoice::Report& report);
json report_json(const AssignmentCase& c, const assignment::Report& report);
json report_json(const SpanningTreeCase& c, const trees::TreeReport& report);
json report_json(const SteinerCase& c, const trees::SteinerReport& report);
json report_json(const AccessPointScenario& c, const ApReport& report);

struct CommandOptions {
  std::optional<std::int64_t> budget;          // overrides the file budget
  Method method = Method::exact;
  std::optional<ProximityMode> proximity;      // trees only
  knapsack::Stage stage = knapsack::Stage::two;
  int candidates = 4;                          // knapsack greedy reduction
  bool three_exchange = false;                 // assignment local search
};

// Base problem at the requested stage.
json run_solve(const InstanceFile& file, knapsack::Stage stage);

// Restructuring with the per-family method mapping; *feasible receives the
// report's feasibility for the caller's exit code.
json run_restructure(const InstanceFile& file, const CommandOptions& options,
                     bool* feasible);

// Delta between s1 and the goal solution of the file (requires s2).
json run_diff(const InstanceFile& file);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> failures;
};

// Independently re-checks a report against its instance: structural
// invariants, recomputed change cost / objective / proximity, and the
// budget. Never invokes a solver; proximity is only checked when the file
// carries the goal solution.
VerifyResult run_verify(const InstanceFile& file, const json& report,
                        std::optional<std::int64_t> budget_override);

}  // namespace restruct::io
