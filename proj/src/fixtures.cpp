#include <array>

#include "restruct/io.hpp"

// Bundled sample instances. The numeric tables are fixed reference data for
// the test suites; `restruct fixtures NAME` writes them out as JSON.

namespace restruct::io {

namespace {

knapsack::Item uniform_item(ElementId id) {
  return {id, 1, 1, 1, 1, {1, 1}};
}

KnapsackCase fixture_knapsack_fig5() {
  KnapsackCase c;
  for (ElementId id = 1; id <= 7; ++id)
    c.instance.items.push_back(uniform_item(id));
  c.instance.b1 = 7;
  c.instance.b2 = 7;
  c.s1 = {1, 3, 4, 5};
  c.s2 = IdSet{2, 3, 5, 7};
  c.budget = Budget{4};
  return c;
}

MultiChoiceCase fixture_multichoice_sec3() {
  MultiChoiceCase c;
  for (ElementId id = 1; id <= 13; ++id)
    c.instance.items.push_back(uniform_item(id));
  c.instance.groups = {{1, 3, 5, 12}, {2, 7, 9}, {4, 8, 13}, {6, 10, 11}};
  c.instance.b1 = 13;
  c.instance.b2 = 13;
  c.s1 = {1, 7, 8, 11};
  c.s2 = IdSet{3, 7, 8, 10};
  c.budget = Budget{4};
  return c;
}

AssignmentCase fixture_assignment_sec3() {
  AssignmentCase c;
  const int n = 7;
  c.c1.c.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p)
      c.c1.c[i][p] = ((i + 1) * (p + 1)) % 10;  // synthetic profit surface
  c.c2 = c.c1;
  c.h.h.assign(n, std::vector<std::int64_t>(n, 1));
  for (int p = 0; p < n; ++p) c.h.h[p][p] = 0;
  c.s1 = assignment::from_one_based({2, 4, 5, 1, 3, 7, 6});
  c.s2 = assignment::from_one_based({4, 1, 3, 7, 5, 2, 6});
  c.budget = Budget{2};
  return c;
}

trees::EdgeSet edges_from(std::initializer_list<std::pair<int, int>> pairs) {
  trees::EdgeSet edges;
  for (const auto& [u, v] : pairs) edges.push_back(trees::make_edge(u, v));
  return trees::canonical_edges(edges);
}

SpanningTreeCase fixture_tree_fig6() {
  SpanningTreeCase c;
  c.graph.vertices = {1, 2, 3, 4, 5, 6, 7};
  // Twelve listed edges plus (3,5), which both bundled trees use.
  c.graph.edges = edges_from({{1, 2}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 6},
                              {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}, {5, 7},
                              {6, 7}});
  c.graph.edge_weights.assign(c.graph.edges.size(), std::int64_t{1});
  c.graph.edge_costs.assign(c.graph.edges.size(), CostPair{1, 1});
  c.s1.edges = edges_from({{1, 2}, {1, 4}, {1, 6}, {3, 5}, {5, 6}, {6, 7}});
  c.s2 = trees::SpanningTree{
      edges_from({{1, 2}, {2, 3}, {2, 6}, {4, 6}, {5, 6}, {6, 7}})};
  c.budget = Budget{4};
  return c;
}

SteinerCase fixture_steiner_fig7() {
  SteinerCase c;
  c.problem.terminals = {1, 2, 3, 4, 5, 6, 7};
  c.problem.candidates = {8, 9, 10, 11};
  c.problem.vertex_costs.assign(4, CostPair{1, 1});
  c.labels = {{8, "a"}, {9, "b"}, {10, "c"}, {11, "d"}};
  c.problem.graph.vertices = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  // Union of the edges used by the three bundled trees.
  c.problem.graph.edges = edges_from(
      {{1, 2}, {1, 8}, {1, 11}, {2, 3}, {2, 11}, {3, 5}, {3, 10}, {4, 8},
       {5, 9}, {5, 10}, {6, 7}, {6, 8}, {6, 9}, {6, 10}, {7, 9}, {8, 11}});
  c.problem.graph.edge_costs.assign(c.problem.graph.edges.size(),
                                    CostPair{1, 1});
  c.s1.steiner_used = {8, 9};
  c.s1.edges = edges_from(
      {{1, 2}, {1, 8}, {4, 8}, {6, 8}, {3, 5}, {5, 9}, {6, 9}, {7, 9}});
  c.s2.steiner_used = {8, 9, 11};
  c.s2.edges = edges_from({{2, 3}, {2, 11}, {1, 11}, {8, 11}, {4, 8}, {6, 8},
                           {5, 9}, {6, 9}, {7, 9}});
  c.budget = Budget{10};
  return c;
}

MultiChoiceCase fixture_sensor() {
  MultiChoiceCase c;
  // id, c1, a, c2, h-, h+
  struct Row {
    ElementId id;
    const char* label;
    std::int64_t a, h_minus, h_plus, c1, c2;
  };
  const std::array<Row, 14> rows{{
      {1, "R1", 6, 2, 2, 1, 1},
      {2, "R2", 5, 1, 1, 2, 3},
      {3, "R3", 3, 2, 1, 2, 1},
      {4, "R4", 2, 2, 2, 3, 2},
      {5, "P1", 5, 2, 3, 3, 2},
      {6, "P2", 10, 2, 2, 2, 3},
      {7, "P3", 30, 3, 2, 1, 2},
      {8, "D1", 2, 2, 3, 2, 3},
      {9, "D2", 1, 2, 2, 3, 2},
      {10, "D3", 2, 1, 1, 2, 1},
      {11, "Q1", 3, 2, 1, 1, 3},
      {12, "Q2", 2, 2, 2, 1, 3},
      {13, "Q3", 3, 1, 2, 2, 2},
      {14, "Q4", 3, 1, 1, 3, 2},
  }};
  for (const Row& row : rows) {
    c.instance.items.push_back(
        {row.id, row.c1, row.a, row.c2, row.a, {row.h_minus, row.h_plus}});
    c.labels[row.id] = row.label;
  }
  c.instance.groups = {{1, 2, 3, 4}, {5, 6, 7}, {8, 9, 10}, {11, 12, 13, 14}};
  // The cost column is carried but no capacity binds in this scenario.
  c.instance.b1 = 100;
  c.instance.b2 = 100;
  c.s1 = {4, 6, 9, 14};   // R4, P2, D2, Q4
  c.s2 = IdSet{2, 6, 9, 11};  // R2, P2, D2, Q1
  // Default restricted mode: only the radio and memory swaps are on the
  // table (R4 <-> R2, Q4 <-> Q1). Drop `changeable` for the full mode.
  c.instance.changeable = IdSet{2, 4, 11, 14};
  c.budget = Budget{5};
  return c;
}

AccessPointScenario fixture_access_points() {
  AccessPointScenario c;
  // id, x, y, z, f, r
  const std::array<std::array<std::int64_t, 6>, 21> users{{
      {1, 30, 165, 5, 10, 5},   {2, 58, 174, 5, 5, 9},
      {3, 95, 156, 0, 6, 6},    {4, 52, 134, 5, 6, 8},
      {5, 85, 134, 3, 6, 7},    {6, 27, 109, 7, 8, 5},
      {7, 55, 105, 2, 7, 10},   {8, 98, 89, 3, 10, 10},
      {9, 25, 65, 2, 7, 5},     {10, 52, 81, 1, 10, 8},
      {11, 65, 25, 7, 6, 9},    {12, 93, 39, 1, 10, 10},
      {13, 172, 26, 2, 10, 7},  {14, 110, 169, 5, 7, 5},
      {15, 145, 181, 3, 5, 4},  {16, 150, 150, 5, 7, 4},
      {17, 120, 140, 6, 4, 6},  {18, 150, 136, 3, 6, 7},
      {19, 135, 59, 4, 13, 4},  {20, 147, 79, 5, 7, 16},
      {21, 127, 95, 5, 7, 5},
  }};
  for (const auto& row : users)
    c.users.push_back({row[0], row[1], row[2], row[3], row[4], row[5]});
  // id, x, y, z, f, n, r
  const std::array<std::array<std::int64_t, 7>, 6> aps{{
      {1, 50, 157, 10, 30, 4, 10},
      {2, 72, 102, 10, 42, 6, 10},
      {3, 45, 52, 10, 45, 10, 10},
      {4, 150, 165, 10, 30, 5, 15},
      {5, 140, 112, 10, 32, 5, 8},
      {6, 147, 47, 10, 30, 5, 15},
  }};
  for (const auto& row : aps)
    c.access_points.push_back(
        {row[0], row[1], row[2], row[3], row[4], row[5], row[6]});
  c.change_zone = {3, 5, 8, 12, 13, 14, 17, 19, 21};
  // Per change-zone user, one (h-, h+, c) triple per access point.
  const std::array<std::array<std::array<std::int64_t, 3>, 6>, 9> ops{{
      {{{3, 2, 2}, {2, 1, 3}, {1, 0, 3}, {3, 1, 3}, {2, 1, 0}, {1, 1, 0}}},
      {{{2, 1, 1}, {1, 3, 1}, {1, 2, 1}, {3, 2, 1}, {1, 1, 1}, {1, 1, 1}}},
      {{{1, 1, 3}, {1, 1, 3}, {1, 1, 3}, {1, 1, 0}, {1, 1, 3}, {2, 2, 2}}},
      {{{2, 2, 3}, {1, 2, 3}, {1, 2, 3}, {3, 1, 0}, {2, 1, 0}, {1, 1, 0}}},
      {{{1, 1, 3}, {1, 1, 3}, {1, 1, 3}, {2, 1, 0}, {2, 2, 1}, {1, 1, 3}}},
      {{{1, 1, 1}, {2, 2, 2}, {1, 2, 0}, {1, 1, 1}, {1, 1, 1}, {1, 1, 0}}},
      {{{1, 1, 2}, {1, 1, 1}, {1, 0, 1}, {3, 1, 1}, {1, 1, 1}, {1, 1, 1}}},
      {{{1, 1, 0}, {1, 1, 3}, {1, 2, 3}, {3, 2, 0}, {1, 1, 3}, {1, 1, 2}}},
      {{{1, 1, 0}, {1, 2, 3}, {1, 1, 2}, {3, 1, 1}, {1, 1, 1}, {1, 1, 1}}},
  }};
  for (std::size_t row = 0; row < c.change_zone.size(); ++row)
    for (std::size_t ap = 0; ap < 6; ++ap)
      c.ops_table.push_back({c.change_zone[row],
                             static_cast<ElementId>(ap + 1),
                             ops[row][ap][0], ops[row][ap][1],
                             ops[row][ap][2]});
  c.reassignments = {{3, 1, 4}, {13, 3, 6}, {21, 5, 2}};
  c.budget = Budget{5};
  return c;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"knapsack-fig5", "multichoice-sec3", "assignment-sec3",
          "tree-fig6",     "steiner-fig7",     "sensor",
          "access-points"};
}

InstanceFile fixture(const std::string& name) {
  if (name == "knapsack-fig5") return fixture_knapsack_fig5();
  if (name == "multichoice-sec3") return fixture_multichoice_sec3();
  if (name == "assignment-sec3") return fixture_assignment_sec3();
  if (name == "tree-fig6") return fixture_tree_fig6();
  if (name == "steiner-fig7") return fixture_steiner_fig7();
  if (name == "sensor") return fixture_sensor();
  if (name == "access-points") return fixture_access_points();
  throw SchemaError({"unknown fixture '" + name + "'"});
}

}  // namespace restruct::io
