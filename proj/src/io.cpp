#include "restruct/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace restruct::io {

namespace {

// ---------------------------------------------------------------------------
// Field access with diagnostics. Wrong JSON types raise ParseError right
// away; missing fields and semantic problems are collected so a SchemaError
// can list every violation at once.
// ---------------------------------------------------------------------------

struct Collector {
  std::vector<std::string> violations;

  void add(const std::string& message) { violations.push_back(message); }
  void finish() const {
    if (!violations.empty()) throw SchemaError(violations);
  }
};

std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw ParseError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t req_int(const json& o, const std::string& key,
                     const std::string& where, Collector& c) {
  if (!o.is_object() || !o.contains(key)) {
    c.add(where + ": missing field '" + key + "'");
    return 0;
  }
  return as_int(o.at(key), where + "." + key);
}

const json* opt_field(const json& o, const std::string& key) {
  if (!o.is_object() || !o.contains(key)) return nullptr;
  return &o.at(key);
}

const json& req_field(const json& o, const std::string& key,
                      const std::string& where) {
  if (!o.is_object() || !o.contains(key))
    throw SchemaError({where + ": missing field '" + key + "'"});
  return o.at(key);
}

const json& req_array(const json& o, const std::string& key,
                      const std::string& where) {
  const json& field = req_field(o, key, where);
  if (!field.is_array())
    throw ParseError(where + "." + key + ": expected an array");
  return field;
}

IdSet parse_ids(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array");
  IdSet ids;
  for (std::size_t i = 0; i < arr.size(); ++i)
    ids.push_back(as_int(arr[i], where + "[" + std::to_string(i) + "]"));
  return ids;
}

std::vector<std::vector<std::int64_t>> parse_matrix(const json& arr,
                                                    const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array()) throw ParseError(row_where + ": expected an array");
    std::vector<std::int64_t> row;
    for (std::size_t k = 0; k < arr[i].size(); ++k)
      row.push_back(as_int(arr[i][k], row_where + "[" + std::to_string(k) + "]"));
    rows.push_back(std::move(row));
  }
  return rows;
}

trees::EdgeSet parse_edge_list(const json& arr, const std::string& where,
                               Collector& c) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array");
  trees::EdgeSet edges;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string entry = where + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2)
      throw ParseError(entry + ": expected a [u, v] pair");
    const std::int64_t u = as_int(arr[i][0], entry + "[0]");
    const std::int64_t v = as_int(arr[i][1], entry + "[1]");
    if (u == v) {
      c.add(entry + ": self-loop (" + std::to_string(u) + "," +
            std::to_string(v) + ")");
      continue;
    }
    edges.push_back(trees::make_edge(u, v));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

Budget parse_budget(const json& o, const std::string& where, Collector& c) {
  const std::int64_t value = req_int(o, "budget", where, c);
  if (value < 0) c.add(where + ": budget must be >= 0");
  return Budget{value};
}

void check_distinct_ids(const IdSet& ids, const std::string& what,
                        Collector& c) {
  IdSet sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    c.add(what + ": ids must be distinct");
  for (ElementId id : ids)
    if (id < 0) c.add(what + ": ids must be >= 0");
}

void check_subset(const IdSet& subset, const IdSet& universe,
                  const std::string& what, Collector& c) {
  for (ElementId id : subset)
    if (!std::binary_search(universe.begin(), universe.end(), id))
      c.add(what + ": unknown element " + std::to_string(id));
}

json ids_json(const IdSet& ids) {
  json arr = json::array();
  for (ElementId id : canonical_ids(ids)) arr.push_back(id);
  return arr;
}

json edges_json(const trees::EdgeSet& edges) {
  json arr = json::array();
  for (const trees::Edge& e : canonical_edges(edges))
    arr.push_back(json::array({e.u, e.v}));
  return arr;
}

// ---------------------------------------------------------------------------
// Per-family parsing
// ---------------------------------------------------------------------------

std::vector<knapsack::Item> parse_items(const json& o, Collector& c,
                                        std::map<ElementId, std::string>* labels) {
  std::vector<knapsack::Item> items;
  const json& arr = req_array(o, "items", "instance");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "items[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    knapsack::Item item;
    item.id = req_int(entry, "id", where, c);
    const std::string name = "element " + std::to_string(item.id);
    item.c1 = req_int(entry, "c1", where, c);
    item.a1 = req_int(entry, "a1", where, c);
    item.c2 = req_int(entry, "c2", where, c);
    item.a2 = req_int(entry, "a2", where, c);
    if (!entry.contains("h_minus") || !entry.contains("h_plus")) {
      c.add("missing change-cost entry for " + name);
    } else {
      item.cost.h_minus = as_int(entry.at("h_minus"), where + ".h_minus");
      item.cost.h_plus = as_int(entry.at("h_plus"), where + ".h_plus");
    }
    if (item.c1 < 0 || item.c2 < 0 || item.a1 < 0 || item.a2 < 0 ||
        item.cost.h_minus < 0 || item.cost.h_plus < 0)
      c.add(name + ": values must be nonnegative");
    if (labels && entry.contains("label")) {
      if (!entry.at("label").is_string())
        throw ParseError(where + ".label: expected a string");
      (*labels)[item.id] = entry.at("label").get<std::string>();
    }
    items.push_back(item);
  }
  return items;
}

KnapsackCase parse_knapsack(const json& j) {
  Collector c;
  KnapsackCase out;
  out.instance.items = parse_items(j, c, nullptr);
  out.instance.b1 = req_int(j, "b1", "instance", c);
  out.instance.b2 = req_int(j, "b2", "instance", c);
  if (out.instance.b1 < 0 || out.instance.b2 < 0)
    c.add("capacities must be >= 0");
  out.budget = parse_budget(j, "instance", c);
  IdSet universe;
  for (const auto& item : out.instance.items) universe.push_back(item.id);
  check_distinct_ids(universe, "items", c);
  universe = canonical_ids(universe);
  out.s1 = canonical_ids(parse_ids(req_array(j, "s1", "instance"), "s1"));
  check_subset(out.s1, universe, "s1", c);
  if (const json* s2 = opt_field(j, "s2")) {
    out.s2 = canonical_ids(parse_ids(*s2, "s2"));
    check_subset(*out.s2, universe, "s2", c);
  }
  if (c.violations.empty()) {
    if (knapsack::weight(out.instance, out.s1, knapsack::Stage::one) >
        out.instance.b1)
      c.add("s1 exceeds the stage-1 capacity");
    if (out.s2 && knapsack::weight(out.instance, *out.s2,
                                   knapsack::Stage::two) > out.instance.b2)
      c.add("s2 exceeds the stage-2 capacity");
  }
  c.finish();
  return out;
}

MultiChoiceCase parse_multichoice(const json& j) {
  Collector c;
  MultiChoiceCase out;
  out.instance.items = parse_items(j, c, &out.labels);
  out.instance.b1 = req_int(j, "b1", "instance", c);
  out.instance.b2 = req_int(j, "b2", "instance", c);
  if (out.instance.b1 < 0 || out.instance.b2 < 0)
    c.add("capacities must be >= 0");
  out.budget = parse_budget(j, "instance", c);
  IdSet universe;
  for (const auto& item : out.instance.items) universe.push_back(item.id);
  check_distinct_ids(universe, "items", c);
  universe = canonical_ids(universe);

  const json& groups = req_array(j, "groups", "instance");
  IdSet grouped;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    IdSet group = canonical_ids(
        parse_ids(groups[g], "groups[" + std::to_string(g) + "]"));
    grouped.insert(grouped.end(), group.begin(), group.end());
    out.instance.groups.push_back(std::move(group));
  }
  std::sort(grouped.begin(), grouped.end());
  if (std::adjacent_find(grouped.begin(), grouped.end()) != grouped.end())
    c.add("groups must be pairwise disjoint");
  if (grouped != universe) c.add("groups must partition the element set");

  out.s1 = canonical_ids(parse_ids(req_array(j, "s1", "instance"), "s1"));
  check_subset(out.s1, universe, "s1", c);
  if (const json* s2 = opt_field(j, "s2")) {
    out.s2 = canonical_ids(parse_ids(*s2, "s2"));
    check_subset(*out.s2, universe, "s2", c);
  }
  if (const json* changeable = opt_field(j, "changeable")) {
    out.instance.changeable = canonical_ids(parse_ids(*changeable, "changeable"));
    check_subset(*out.instance.changeable, universe, "changeable", c);
  }
  if (c.violations.empty()) {
    for (const auto& message :
         multichoice::solution_violations(out.instance, out.s1))
      c.add("s1: " + message);
    if (out.s2)
      for (const auto& message :
           multichoice::solution_violations(out.instance, *out.s2))
        c.add("s2: " + message);
    if (c.violations.empty()) {
      if (multichoice::weight(out.instance, out.s1, knapsack::Stage::one) >
          out.instance.b1)
        c.add("s1 exceeds the stage-1 capacity");
      if (out.s2 && multichoice::weight(out.instance, *out.s2,
                                        knapsack::Stage::two) > out.instance.b2)
        c.add("s2 exceeds the stage-2 capacity");
    }
  }
  c.finish();
  return out;
}

assignment::Permutation parse_permutation(const json& arr,
                                          const std::string& where,
                                          std::size_t n, Collector& c) {
  const IdSet labels = parse_ids(arr, where);
  if (labels.size() != n) {
    c.add(where + ": expected " + std::to_string(n) + " entries");
    return {};
  }
  std::vector<int> as_int_labels;
  for (ElementId label : labels)
    as_int_labels.push_back(static_cast<int>(label));
  assignment::Permutation perm = assignment::from_one_based(as_int_labels);
  if (!assignment::is_permutation(perm))
    c.add(where + ": not a permutation of 1.." + std::to_string(n));
  return perm;
}

AssignmentCase parse_assignment(const json& j) {
  Collector c;
  AssignmentCase out;
  const std::int64_t n = req_int(j, "n", "instance", c);
  if (n < 1) c.add("n must be >= 1");
  out.c1.c = parse_matrix(req_field(j, "c1", "instance"), "c1");
  out.c2.c = parse_matrix(req_field(j, "c2", "instance"), "c2");
  out.h.h = parse_matrix(req_field(j, "h", "instance"), "h");
  const auto check_square = [&](const auto& m, const std::string& name) {
    if (static_cast<std::int64_t>(m.size()) != n) {
      c.add(name + ": expected " + std::to_string(n) + " rows");
      return false;
    }
    for (const auto& row : m)
      if (static_cast<std::int64_t>(row.size()) != n) {
        c.add(name + ": expected " + std::to_string(n) + " columns per row");
        return false;
      }
    return true;
  };
  const bool shapes_ok = check_square(out.c1.c, "c1") &
                         check_square(out.c2.c, "c2") &
                         check_square(out.h.h, "h");
  if (shapes_ok) {
    for (const auto& m : {&out.c1.c, &out.c2.c})
      for (const auto& row : *m)
        for (std::int64_t value : row)
          if (value < 0) {
            c.add("profits must be nonnegative");
            goto profits_done;
          }
  profits_done:
    for (std::size_t p = 0; p < out.h.h.size(); ++p) {
      if (out.h.h[p][p] != 0) c.add("h diagonal must be zero");
      for (std::int64_t value : out.h.h[p])
        if (value < 0) c.add("h entries must be nonnegative");
    }
  }
  out.budget = parse_budget(j, "instance", c);
  out.s1 = parse_permutation(req_array(j, "s1", "instance"), "s1",
                             static_cast<std::size_t>(n), c);
  if (const json* s2 = opt_field(j, "s2"))
    out.s2 = parse_permutation(*s2, "s2", static_cast<std::size_t>(n), c);
  c.finish();
  return out;
}

trees::Graph parse_graph(const json& j, bool steiner, Collector& c,
                         const IdSet& vertices) {
  trees::Graph graph;
  graph.vertices = vertices;
  struct Entry {
    trees::Edge edge;
    std::optional<std::int64_t> weight;
    CostPair cost;
  };
  std::vector<Entry> entries;
  const json& arr = req_array(j, "edges", "instance");
  bool any_weight = false;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = arr[i];
    Entry entry;
    const std::int64_t u = req_int(e, "u", where, c);
    const std::int64_t v = req_int(e, "v", where, c);
    if (u == v) {
      c.add(where + ": self-loop");
      continue;
    }
    entry.edge = trees::make_edge(u, v);
    const std::string name =
        "edge (" + std::to_string(entry.edge.u) + "," +
        std::to_string(entry.edge.v) + ")";
    if (!std::binary_search(vertices.begin(), vertices.end(), entry.edge.u) ||
        !std::binary_search(vertices.begin(), vertices.end(), entry.edge.v))
      c.add(name + ": endpoint is not a known vertex");
    if (!e.contains("h_minus") || !e.contains("h_plus")) {
      c.add("missing change-cost entry for " + name);
    } else {
      entry.cost.h_minus = as_int(e.at("h_minus"), where + ".h_minus");
      entry.cost.h_plus = as_int(e.at("h_plus"), where + ".h_plus");
      if (entry.cost.h_minus < 0 || entry.cost.h_plus < 0)
        c.add(name + ": change costs must be nonnegative");
    }
    if (e.contains("weight")) {
      entry.weight = as_int(e.at("weight"), where + ".weight");
      any_weight = true;
    }
    entries.push_back(entry);
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.edge < b.edge; });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].edge == entries[i + 1].edge)
      c.add("duplicate edge (" + std::to_string(entries[i].edge.u) + "," +
            std::to_string(entries[i].edge.v) + ")");
  for (const Entry& entry : entries) {
    graph.edges.push_back(entry.edge);
    graph.edge_costs.push_back(entry.cost);
    if (any_weight || !steiner) graph.edge_weights.push_back(entry.weight);
  }
  if (!any_weight) graph.edge_weights.clear();
  return graph;
}

SpanningTreeCase parse_spanning(const json& j) {
  Collector c;
  SpanningTreeCase out;
  IdSet vertices =
      canonical_ids(parse_ids(req_array(j, "vertices", "instance"), "vertices"));
  check_distinct_ids(vertices, "vertices", c);
  out.graph = parse_graph(j, false, c, vertices);
  out.budget = parse_budget(j, "instance", c);
  out.s1.edges = parse_edge_list(req_array(j, "s1", "instance"), "s1", c);
  if (const json* s2 = opt_field(j, "s2")) {
    out.s2 = trees::SpanningTree{parse_edge_list(*s2, "s2", c)};
  }
  if (c.violations.empty()) {
    for (const auto& message :
         trees::spanning_tree_violations(out.graph, out.s1))
      c.add("s1: " + message);
    if (out.s2)
      for (const auto& message :
           trees::spanning_tree_violations(out.graph, *out.s2))
        c.add("s2: " + message);
  }
  c.finish();
  return out;
}

SteinerCase parse_steiner(const json& j) {
  Collector c;
  SteinerCase out;
  out.problem.terminals = canonical_ids(
      parse_ids(req_array(j, "terminals", "instance"), "terminals"));
  check_distinct_ids(out.problem.terminals, "terminals", c);
  const json& candidates = req_array(j, "candidates", "instance");
  struct Candidate {
    ElementId id;
    CostPair cost;
    std::optional<std::string> label;
  };
  std::vector<Candidate> parsed;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::string where = "candidates[" + std::to_string(i) + "]";
    const json& entry = candidates[i];
    Candidate candidate;
    candidate.id = req_int(entry, "id", where, c);
    const std::string name = "steiner vertex " + std::to_string(candidate.id);
    if (!entry.contains("w_minus") || !entry.contains("w_plus")) {
      c.add("missing change-cost entry for " + name);
    } else {
      candidate.cost.h_minus = as_int(entry.at("w_minus"), where + ".w_minus");
      candidate.cost.h_plus = as_int(entry.at("w_plus"), where + ".w_plus");
      if (candidate.cost.h_minus < 0 || candidate.cost.h_plus < 0)
        c.add(name + ": change costs must be nonnegative");
    }
    if (entry.contains("label")) {
      if (!entry.at("label").is_string())
        throw ParseError(where + ".label: expected a string");
      candidate.label = entry.at("label").get<std::string>();
    }
    parsed.push_back(candidate);
  }
  std::sort(parsed.begin(), parsed.end(),
            [](const Candidate& a, const Candidate& b) { return a.id < b.id; });
  for (const Candidate& candidate : parsed) {
    out.problem.candidates.push_back(candidate.id);
    out.problem.vertex_costs.push_back(candidate.cost);
    if (candidate.label) out.labels[candidate.id] = *candidate.label;
  }
  IdSet vertices = out.problem.terminals;
  vertices.insert(vertices.end(), out.problem.candidates.begin(),
                  out.problem.candidates.end());
  vertices = canonical_ids(vertices);
  if (vertices.size() !=
      out.problem.terminals.size() + out.problem.candidates.size())
    c.add("terminals and candidates must be disjoint");
  out.problem.graph = parse_graph(j, true, c, vertices);
  out.budget = parse_budget(j, "instance", c);

  const auto parse_tree = [&](const json& t, const std::string& where) {
    trees::SteinerTree tree;
    tree.steiner_used =
        canonical_ids(parse_ids(req_array(t, "steiner", where), where + ".steiner"));
    tree.edges = parse_edge_list(req_array(t, "edges", where), where + ".edges", c);
    return tree;
  };
  out.s1 = parse_tree(req_field(j, "s1", "instance"), "s1");
  out.s2 = parse_tree(req_field(j, "s2", "instance"), "s2");
  if (c.violations.empty()) {
    for (const auto& message :
         trees::steiner_tree_violations(out.problem, out.s1))
      c.add("s1: " + message);
    for (const auto& message :
         trees::steiner_tree_violations(out.problem, out.s2))
      c.add("s2: " + message);
  }
  c.finish();
  return out;
}

AccessPointScenario parse_access_points(const json& j) {
  Collector c;
  AccessPointScenario out;
  const json& users = req_array(j, "users", "instance");
  for (std::size_t i = 0; i < users.size(); ++i) {
    const std::string where = "users[" + std::to_string(i) + "]";
    User user;
    user.id = req_int(users[i], "id", where, c);
    user.x = req_int(users[i], "x", where, c);
    user.y = req_int(users[i], "y", where, c);
    user.z = req_int(users[i], "z", where, c);
    user.f = req_int(users[i], "f", where, c);
    user.r = req_int(users[i], "r", where, c);
    out.users.push_back(user);
  }
  const json& aps = req_array(j, "access_points", "instance");
  for (std::size_t i = 0; i < aps.size(); ++i) {
    const std::string where = "access_points[" + std::to_string(i) + "]";
    AccessPoint ap;
    ap.id = req_int(aps[i], "id", where, c);
    ap.x = req_int(aps[i], "x", where, c);
    ap.y = req_int(aps[i], "y", where, c);
    ap.z = req_int(aps[i], "z", where, c);
    ap.f = req_int(aps[i], "f", where, c);
    ap.n = req_int(aps[i], "n", where, c);
    ap.r = req_int(aps[i], "r", where, c);
    out.access_points.push_back(ap);
  }
  IdSet user_ids, ap_ids;
  for (const User& user : out.users) user_ids.push_back(user.id);
  for (const AccessPoint& ap : out.access_points) ap_ids.push_back(ap.id);
  check_distinct_ids(user_ids, "users", c);
  check_distinct_ids(ap_ids, "access_points", c);
  user_ids = canonical_ids(user_ids);
  ap_ids = canonical_ids(ap_ids);

  out.change_zone = canonical_ids(
      parse_ids(req_array(j, "change_zone", "instance"), "change_zone"));
  check_subset(out.change_zone, user_ids, "change_zone", c);

  const json& ops = req_array(j, "ops_table", "instance");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string where = "ops_table[" + std::to_string(i) + "]";
    OpsEntry entry;
    entry.user = req_int(ops[i], "user", where, c);
    entry.ap = req_int(ops[i], "ap", where, c);
    entry.h_minus = req_int(ops[i], "h_minus", where, c);
    entry.h_plus = req_int(ops[i], "h_plus", where, c);
    entry.c = req_int(ops[i], "c", where, c);
    if (entry.h_minus < 0 || entry.h_plus < 0 || entry.c < 0)
      c.add(where + ": values must be nonnegative");
    out.ops_table.push_back(entry);
  }
  std::sort(out.ops_table.begin(), out.ops_table.end(),
            [](const OpsEntry& a, const OpsEntry& b) {
              return a.user != b.user ? a.user < b.user : a.ap < b.ap;
            });
  for (ElementId user : out.change_zone)
    for (ElementId ap : ap_ids)
      if (out.find_op(user, ap) == nullptr)
        c.add("ops_table: missing entry for user " + std::to_string(user) +
              ", access point " + std::to_string(ap));

  const json& moves = req_array(j, "reassignments", "instance");
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const std::string where = "reassignments[" + std::to_string(i) + "]";
    Reassignment move;
    move.user = req_int(moves[i], "user", where, c);
    move.from_ap = req_int(moves[i], "from", where, c);
    move.to_ap = req_int(moves[i], "to", where, c);
    if (!std::binary_search(out.change_zone.begin(), out.change_zone.end(),
                            move.user))
      c.add(where + ": user " + std::to_string(move.user) +
            " is outside the change zone");
    for (ElementId ap : {move.from_ap, move.to_ap})
      if (!std::binary_search(ap_ids.begin(), ap_ids.end(), ap))
        c.add(where + ": unknown access point " + std::to_string(ap));
    if (move.from_ap == move.to_ap)
      c.add(where + ": reconnection must change the access point");
    out.reassignments.push_back(move);
  }
  std::sort(out.reassignments.begin(), out.reassignments.end(),
            [](const Reassignment& a, const Reassignment& b) {
              if (a.user != b.user) return a.user < b.user;
              if (a.from_ap != b.from_ap) return a.from_ap < b.from_ap;
              return a.to_ap < b.to_ap;
            });
  out.budget = parse_budget(j, "instance", c);
  c.finish();
  return out;
}

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

json items_json(const std::vector<knapsack::Item>& items,
                const std::map<ElementId, std::string>& labels) {
  std::vector<knapsack::Item> sorted = items;
  std::sort(sorted.begin(), sorted.end(),
            [](const knapsack::Item& a, const knapsack::Item& b) {
              return a.id < b.id;
            });
  json arr = json::array();
  for (const knapsack::Item& item : sorted) {
    json entry{{"id", item.id}, {"c1", item.c1}, {"a1", item.a1},
               {"c2", item.c2}, {"a2", item.a2},
               {"h_minus", item.cost.h_minus},
               {"h_plus", item.cost.h_plus}};
    if (auto it = labels.find(item.id); it != labels.end())
      entry["label"] = it->second;
    arr.push_back(entry);
  }
  return arr;
}

json to_json(const KnapsackCase& c) {
  json j{{"problem", "knapsack"},
         {"items", items_json(c.instance.items, {})},
         {"b1", c.instance.b1},
         {"b2", c.instance.b2},
         {"s1", ids_json(c.s1)},
         {"budget", c.budget.h_hat}};
  if (c.s2) j["s2"] = ids_json(*c.s2);
  return j;
}

json to_json(const MultiChoiceCase& c) {
  json groups = json::array();
  for (const IdSet& group : c.instance.groups) groups.push_back(ids_json(group));
  json j{{"problem", "multichoice"},
         {"items", items_json(c.instance.items, c.labels)},
         {"groups", groups},
         {"b1", c.instance.b1},
         {"b2", c.instance.b2},
         {"s1", ids_json(c.s1)},
         {"budget", c.budget.h_hat}};
  if (c.s2) j["s2"] = ids_json(*c.s2);
  if (c.instance.changeable) j["changeable"] = ids_json(*c.instance.changeable);
  return j;
}

json to_json(const AssignmentCase& c) {
  json j{{"problem", "assignment"},
         {"n", static_cast<std::int64_t>(c.s1.size())},
         {"c1", c.c1.c},
         {"c2", c.c2.c},
         {"h", c.h.h},
         {"s1", assignment::to_one_based(c.s1)},
         {"budget", c.budget.h_hat}};
  if (c.s2) j["s2"] = assignment::to_one_based(*c.s2);
  return j;
}

json graph_edges_json(const trees::Graph& g) {
  json arr = json::array();
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    json entry{{"u", g.edges[i].u},
               {"v", g.edges[i].v},
               {"h_minus", g.edge_costs[i].h_minus},
               {"h_plus", g.edge_costs[i].h_plus}};
    if (i < g.edge_weights.size() && g.edge_weights[i])
      entry["weight"] = *g.edge_weights[i];
    arr.push_back(entry);
  }
  return arr;
}

json to_json(const SpanningTreeCase& c) {
  json j{{"problem", "spanning_tree"},
         {"vertices", ids_json(c.graph.vertices)},
         {"edges", graph_edges_json(c.graph)},
         {"s1", edges_json(c.s1.edges)},
         {"budget", c.budget.h_hat}};
  if (c.s2) j["s2"] = edges_json(c.s2->edges);
  return j;
}

json to_json(const SteinerCase& c) {
  json candidates = json::array();
  for (std::size_t i = 0; i < c.problem.candidates.size(); ++i) {
    json entry{{"id", c.problem.candidates[i]},
               {"w_minus", c.problem.vertex_costs[i].h_minus},
               {"w_plus", c.problem.vertex_costs[i].h_plus}};
    if (auto it = c.labels.find(c.problem.candidates[i]); it != c.labels.end())
      entry["label"] = it->second;
    candidates.push_back(entry);
  }
  json j{{"problem", "steiner_tree"},
         {"terminals", ids_json(c.problem.terminals)},
         {"candidates", candidates},
         {"edges", graph_edges_json(c.problem.graph)},
         {"s1", json{{"steiner", ids_json(c.s1.steiner_used)},
                     {"edges", edges_json(c.s1.edges)}}},
         {"s2", json{{"steiner", ids_json(c.s2.steiner_used)},
                     {"edges", edges_json(c.s2.edges)}}},
         {"budget", c.budget.h_hat}};
  return j;
}

json to_json(const AccessPointScenario& c) {
  json users = json::array();
  for (const User& user : c.users)
    users.push_back(json{{"id", user.id}, {"x", user.x}, {"y", user.y},
                         {"z", user.z}, {"f", user.f}, {"r", user.r}});
  json aps = json::array();
  for (const AccessPoint& ap : c.access_points)
    aps.push_back(json{{"id", ap.id}, {"x", ap.x}, {"y", ap.y}, {"z", ap.z},
                       {"f", ap.f}, {"n", ap.n}, {"r", ap.r}});
  json ops = json::array();
  for (const OpsEntry& entry : c.ops_table)
    ops.push_back(json{{"user", entry.user}, {"ap", entry.ap},
                       {"h_minus", entry.h_minus}, {"h_plus", entry.h_plus},
                       {"c", entry.c}});
  json moves = json::array();
  for (const Reassignment& move : c.reassignments)
    moves.push_back(json{{"user", move.user}, {"from", move.from_ap},
                         {"to", move.to_ap}});
  return json{{"problem", "access_points"}, {"users", users},
              {"access_points", aps}, {"change_zone", ids_json(c.change_zone)},
              {"ops_table", ops}, {"reassignments", moves},
              {"budget", c.budget.h_hat}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

std::string to_string(Problem p) {
  switch (p) {
    case Problem::knapsack: return "knapsack";
    case Problem::multichoice: return "multichoice";
    case Problem::assignment: return "assignment";
    case Problem::spanning_tree: return "spanning_tree";
    case Problem::steiner_tree: return "steiner_tree";
    case Problem::access_points: return "access_points";
  }
  return "unknown";
}

ParseError::ParseError(const std::string& message)
    : std::runtime_error(message) {}

namespace {
std::string join_violations(const std::vector<std::string>& violations) {
  std::string joined = "schema violations:";
  for (const std::string& v : violations) joined += "\n  - " + v;
  return joined;
}
}  // namespace

SchemaError::SchemaError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

bool operator==(const Reassignment& a, const Reassignment& b) {
  return a.user == b.user && a.from_ap == b.from_ap && a.to_ap == b.to_ap;
}

const OpsEntry* AccessPointScenario::find_op(ElementId user,
                                             ElementId ap) const {
  for (const OpsEntry& entry : ops_table)
    if (entry.user == user && entry.ap == ap) return &entry;
  return nullptr;
}

Problem problem_of(const InstanceFile& file) {
  return std::visit(
      [](const auto& c) -> Problem {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, KnapsackCase>)
          return Problem::knapsack;
        else if constexpr (std::is_same_v<T, MultiChoiceCase>)
          return Problem::multichoice;
        else if constexpr (std::is_same_v<T, AssignmentCase>)
          return Problem::assignment;
        else if constexpr (std::is_same_v<T, SpanningTreeCase>)
          return Problem::spanning_tree;
        else if constexpr (std::is_same_v<T, SteinerCase>)
          return Problem::steiner_tree;
        else
          return Problem::access_points;
      },
      file);
}

InstanceFile parse_instance(const json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  const json& tag = req_field(j, "problem", "instance");
  if (!tag.is_string()) throw ParseError("problem: expected a string");
  const std::string problem = tag.get<std::string>();
  if (problem == "knapsack") return parse_knapsack(j);
  if (problem == "multichoice") return parse_multichoice(j);
  if (problem == "assignment") return parse_assignment(j);
  if (problem == "spanning_tree") return parse_spanning(j);
  if (problem == "steiner_tree") return parse_steiner(j);
  if (problem == "access_points") return parse_access_points(j);
  throw SchemaError({"unknown problem tag '" + problem + "'"});
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(path.string() + ":" + std::to_string(line) + ":" +
                     std::to_string(column) + ": " + e.what());
  }
  return parse_instance(j);
}

json to_json(const InstanceFile& file) {
  return std::visit([](const auto& c) { return to_json(c); }, file);
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void save_instance(const InstanceFile& file,
                   const std::filesystem::path& path) {
  save_report(to_json(file), path);
}

void save_report(const json& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << canonical_dump(report);
}

ApReport run_access_point_reassignment(const AccessPointScenario& scenario,
                                       Budget budget, Method method) {
  if (budget.h_hat < 0) throw std::invalid_argument("budget must be >= 0");
  std::vector<heuristics::ChangeOperation> operations;
  for (const Reassignment& move : scenario.reassignments) {
    const OpsEntry* from = scenario.find_op(move.user, move.from_ap);
    const OpsEntry* to = scenario.find_op(move.user, move.to_ap);
    if (from == nullptr || to == nullptr)
      throw std::invalid_argument("ops_table lacks an entry for user " +
                                  std::to_string(move.user));
    heuristics::ChangeOperation op;
    op.kind = heuristics::OpKind::swap;
    // The user's old connection is the deleted element, the new one the
    // added element; the triple identifies both.
    op.elements = {move.user, move.from_ap, move.to_ap};
    op.cost = from->h_minus + to->h_plus;
    op.gain = to->c;
    operations.push_back(op);
  }
  const auto selected_ops =
      method == Method::greedy
          ? heuristics::greedy_restructure(operations, budget)
          : heuristics::best_operation_subset(operations, budget);

  ApReport report;
  report.method = method == Method::greedy ? Method::greedy : Method::exact;
  report.feasible = true;
  std::size_t cursor = 0;
  for (const auto& op : selected_ops) {
    while (cursor < operations.size() &&
           !(operations[cursor].elements == op.elements &&
             operations[cursor].cost == op.cost &&
             operations[cursor].gain == op.gain))
      ++cursor;
    report.s_star.push_back(scenario.reassignments[cursor]);
    ++cursor;
  }
  report.delta = report.s_star;
  report.change_cost = heuristics::total_cost(selected_ops);
  report.objective_stage2 = heuristics::total_gain(selected_ops);
  // Goal configuration: every candidate reconnection applied.
  report.proximity = proximity_abs(report.objective_stage2,
                                   heuristics::total_gain(operations));
  return report;
}

namespace {

json base_report_json(Problem problem, Method method, bool feasible,
                      std::int64_t change_cost, const ProximityValue& rho,
                      std::int64_t objective) {
  return json{{"problem", to_string(problem)},
              {"method", restruct::to_string(method)},
              {"feasible", feasible},
              {"change_cost", change_cost},
              {"proximity", rho.value},
              {"proximity_mode", restruct::to_string(rho.mode)},
              {"objective_stage2", objective}};
}

}  // namespace

json report_json(const KnapsackCase&, const knapsack::Report& report) {
  json j = base_report_json(Problem::knapsack, report.method, report.feasible,
                            report.change_cost, report.proximity,
                            report.objective_stage2);
  j["s_star"] = ids_json(report.s_star);
  j["deleted"] = ids_json(report.delta.deleted);
  j["added"] = ids_json(report.delta.added);
  return j;
}

json report_json(const MultiChoiceCase&, const multichoice::Report& report) {
  json j = base_report_json(Problem::multichoice, report.method,
                            report.feasible, report.change_cost,
                            report.proximity, report.objective_stage2);
  j["s_star"] = ids_json(report.s_star);
  j["deleted"] = ids_json(report.delta.deleted);
  j["added"] = ids_json(report.delta.added);
  return j;
}

json report_json(const AssignmentCase&, const assignment::Report& report) {
  json j = base_report_json(Problem::assignment, report.method,
                            report.feasible, report.change_cost,
                            report.proximity, report.objective_stage2);
  j["s_star"] = assignment::to_one_based(report.s_star);
  json moves = json::array();
  for (const assignment::Move& move : report.delta)
    moves.push_back(json{{"element", move.element + 1},
                         {"from", move.from + 1},
                         {"to", move.to + 1}});
  j["moves"] = moves;
  return j;
}

json report_json(const SpanningTreeCase&, const trees::TreeReport& report) {
  json j = base_report_json(Problem::spanning_tree, report.method,
                            report.feasible, report.change_cost,
                            report.proximity, report.objective_stage2);
  j["s_star"] = edges_json(report.s_star.edges);
  j["deleted"] = edges_json(report.delta.deleted);
  j["added"] = edges_json(report.delta.added);
  return j;
}

json report_json(const SteinerCase&, const trees::SteinerReport& report) {
  json j = base_report_json(Problem::steiner_tree, report.method,
                            report.feasible, report.change_cost,
                            report.proximity, report.objective_stage2);
  j["s_star"] = json{{"steiner", ids_json(report.s_star.steiner_used)},
                     {"edges", edges_json(report.s_star.edges)}};
  j["deleted"] = edges_json(report.delta.edges.deleted);
  j["added"] = edges_json(report.delta.edges.added);
  j["steiner_removed"] = ids_json(report.delta.steiner_removed);
  j["steiner_added"] = ids_json(report.delta.steiner_added);
  return j;
}

json report_json(const AccessPointScenario&, const ApReport& report) {
  json j = base_report_json(Problem::access_points, report.method,
                            report.feasible, report.change_cost,
                            report.proximity, report.objective_stage2);
  json selected = json::array();
  for (const Reassignment& move : report.s_star)
    selected.push_back(json{{"user", move.user}, {"from", move.from_ap},
                            {"to", move.to_ap}});
  j["selected"] = selected;
  return j;
}

}  // namespace restruct::io
