#include "doctest.h"
#include "oracles.hpp"
#include "restruct/io.hpp"
#include "restruct/trees.hpp"
#include "testutil.hpp"

using namespace restruct;
using namespace restruct::trees;

namespace {

io::SpanningTreeCase tree_case() {
  return std::get<io::SpanningTreeCase>(io::fixture("tree-fig6"));
}

io::SteinerCase steiner_case() {
  return std::get<io::SteinerCase>(io::fixture("steiner-fig7"));
}

EdgeSet edges_of(std::initializer_list<std::pair<int, int>> pairs) {
  EdgeSet out;
  for (const auto& [u, v] : pairs) out.push_back(make_edge(u, v));
  return canonical_edges(out);
}

}  // namespace

TEST_CASE("mst_base computes a minimum spanning tree") {
  SUBCASE("a tree-shaped graph is its own spanning tree") {
    Graph g;
    g.vertices = {1, 2, 3, 4};
    g.edges = edges_of({{1, 2}, {2, 3}, {2, 4}});
    g.edge_weights = {3, 1, 7};
    g.edge_costs.assign(3, {1, 1});
    CHECK(mst_base(g).edges == g.edges);
  }
  SUBCASE("uniform weights give weight (n-1) * w") {
    testutil::Rng rng(141);
    Graph g = testutil::random_connected_graph(rng, 6, false);
    g.edge_weights.assign(g.edges.size(), std::int64_t{4});
    CHECK(tree_weight(g, mst_base(g)) ==
          4 * static_cast<std::int64_t>(g.vertices.size() - 1));
  }
  SUBCASE("matches enumeration over all spanning trees") {
    testutil::Rng rng(151);
    for (int round = 0; round < 20; ++round) {
      const Graph g = testutil::random_connected_graph(rng, 7, true);
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (const auto& edges : oracle::all_spanning_trees(g))
        best = std::min(best, tree_weight(g, SpanningTree{edges}));
      CHECK(tree_weight(g, mst_base(g)) == best);
    }
  }
  SUBCASE("disconnected graphs are rejected") {
    Graph g;
    g.vertices = {1, 2, 3};
    g.edges = edges_of({{1, 2}});
    g.edge_weights = {1};
    g.edge_costs.assign(1, {1, 1});
    CHECK_THROWS_AS(mst_base(g), DisconnectedGraphError);
  }
}

TEST_CASE("tree_delta lists edge changes") {
  const io::SpanningTreeCase fixture = tree_case();
  REQUIRE(fixture.s2.has_value());
  const SpanningTree t_star{
      edges_of({{1, 2}, {1, 4}, {2, 3}, {2, 6}, {3, 5}, {6, 7}})};
  SUBCASE("bundled tree pair") {
    const EdgeDelta delta = tree_delta(fixture.s1, t_star);
    CHECK(delta.deleted == edges_of({{1, 6}, {5, 6}}));
    CHECK(delta.added == edges_of({{2, 3}, {2, 6}}));
  }
  SUBCASE("identity") {
    const EdgeDelta delta = tree_delta(fixture.s1, fixture.s1);
    CHECK(delta.deleted.empty());
    CHECK(delta.added.empty());
  }
  SUBCASE("spanning trees always swap equally many edges") {
    testutil::Rng rng(161);
    for (int round = 0; round < 20; ++round) {
      const Graph g = testutil::random_connected_graph(rng, 6, false);
      const auto all = oracle::all_spanning_trees(g);
      const auto& a = all[testutil::pick(rng, 0, all.size() - 1)];
      const auto& b = all[testutil::pick(rng, 0, all.size() - 1)];
      const EdgeDelta delta = tree_delta(SpanningTree{a}, SpanningTree{b});
      CHECK(delta.deleted.size() == delta.added.size());
    }
  }
}

TEST_CASE("restructure_spanning minimizes proximity within budget") {
  const io::SpanningTreeCase fixture = tree_case();
  const SpanningTree t_star{
      edges_of({{1, 2}, {1, 4}, {2, 3}, {2, 6}, {3, 5}, {6, 7}})};
  SUBCASE("bundled instance: the known tree is feasible at budget 4") {
    CHECK(is_spanning_tree(fixture.graph, t_star));
    CHECK(edge_change_cost(fixture.graph, fixture.s1, t_star) == 4);
    CHECK(proximity_between(fixture.graph, t_star, *fixture.s2,
                            ProximityMode::structural) == 4);
    const auto report = restructure_spanning(fixture.graph, fixture.s1,
                                             *fixture.s2, Budget{4});
    const auto want = oracle::spanning_restructure(
        fixture.graph, fixture.s1, *fixture.s2, Budget{4},
        ProximityMode::structural);
    CHECK(report.proximity.value == want.rho);
    CHECK(report.change_cost == want.cost);
    CHECK(report.s_star.edges == want.edges);
    CHECK(report.proximity.value <= 4);  // the witness bounds the optimum
  }
  SUBCASE("zero budget with positive costs keeps t1") {
    const auto report = restructure_spanning(fixture.graph, fixture.s1,
                                             *fixture.s2, Budget{0});
    CHECK(report.s_star.edges == fixture.s1.edges);
    CHECK(report.change_cost == 0);
  }
  SUBCASE("vacuous budget reaches t2 exactly") {
    const auto report = restructure_spanning(fixture.graph, fixture.s1,
                                             *fixture.s2, Budget{1000});
    CHECK(report.s_star.edges == fixture.s2->edges);
    CHECK(report.proximity.value == 0);
  }
  SUBCASE("exact equals enumeration on random graphs") {
    testutil::Rng rng(171);
    for (int round = 0; round < 25; ++round) {
      const int n = static_cast<int>(testutil::pick(rng, 4, 8));
      const Graph g = testutil::random_connected_graph(rng, n, false);
      const auto all = oracle::all_spanning_trees(g);
      const SpanningTree t1{all[testutil::pick(rng, 0, all.size() - 1)]};
      const SpanningTree t2{all[testutil::pick(rng, 0, all.size() - 1)]};
      const Budget budget{testutil::pick(rng, 0, 8)};
      const auto report = restructure_spanning(g, t1, t2, budget);
      const auto want = oracle::spanning_restructure(
          g, t1, t2, budget, ProximityMode::structural);
      REQUIRE(want.found);
      CHECK(report.proximity.value == want.rho);
      CHECK(report.change_cost == want.cost);
      CHECK(report.s_star.edges == want.edges);
      CHECK(spanning_tree_violations(g, report.s_star).empty());
    }
  }
  SUBCASE("edge-swap heuristic never beats the exact search") {
    testutil::Rng rng(181);
    for (int round = 0; round < 60; ++round) {
      const int n = static_cast<int>(testutil::pick(rng, 4, 8));
      const Graph g = testutil::random_connected_graph(rng, n, false);
      const auto all = oracle::all_spanning_trees(g);
      const SpanningTree t1{all[testutil::pick(rng, 0, all.size() - 1)]};
      const SpanningTree t2{all[testutil::pick(rng, 0, all.size() - 1)]};
      const Budget budget{testutil::pick(rng, 0, 8)};
      const auto exact = restructure_spanning(g, t1, t2, budget,
                                              ProximityMode::structural,
                                              Method::exact);
      const auto local = restructure_spanning(g, t1, t2, budget,
                                              ProximityMode::structural,
                                              Method::local);
      CHECK(local.proximity.value >= exact.proximity.value);
      CHECK(local.change_cost <= budget.h_hat);
      CHECK(spanning_tree_violations(g, local.s_star).empty());
    }
  }
  SUBCASE("weight-gap proximity mode") {
    testutil::Rng rng(191);
    const Graph g = testutil::random_connected_graph(rng, 6, true);
    const auto all = oracle::all_spanning_trees(g);
    const SpanningTree t1{all.front()};
    const SpanningTree t2{all.back()};
    const auto report = restructure_spanning(g, t1, t2, Budget{6},
                                             ProximityMode::objective);
    const auto want = oracle::spanning_restructure(g, t1, t2, Budget{6},
                                                   ProximityMode::objective);
    CHECK(report.proximity.value == want.rho);
    CHECK(report.proximity.mode == ProximityMode::objective);
  }
}

TEST_CASE("steiner_change_cost combines edge and vertex deltas") {
  const io::SteinerCase fixture = steiner_case();
  SUBCASE("identity costs nothing") {
    CHECK(steiner_change_cost(fixture.problem, fixture.s1, fixture.s1) == 0);
  }
  SUBCASE("bundled trees cost 10 under unit costs") {
    SteinerTree t_star;
    t_star.steiner_used = {8, 10};
    t_star.edges = edges_of(
        {{1, 2}, {1, 8}, {4, 8}, {6, 8}, {3, 10}, {5, 10}, {6, 10}, {6, 7}});
    CHECK(steiner_change_cost(fixture.problem, fixture.s1, t_star) == 10);
  }
  SUBCASE("vertex-only change with zero edge costs") {
    io::SteinerCase zero_edges = steiner_case();
    for (auto& cost : zero_edges.problem.graph.edge_costs) cost = {0, 0};
    SteinerTree t_star;
    t_star.steiner_used = {8, 10};
    t_star.edges = edges_of(
        {{1, 2}, {1, 8}, {4, 8}, {6, 8}, {3, 10}, {5, 10}, {6, 10}, {6, 7}});
    // swap of one steiner vertex for another: w-(9) + w+(10) = 2
    CHECK(steiner_change_cost(zero_edges.problem, zero_edges.s1, t_star) == 2);
  }
  SUBCASE("mismatched trees are rejected") {
    SteinerTree bad;
    bad.steiner_used = {8};
    bad.edges = edges_of({{1, 2}});
    CHECK_THROWS_AS(
        steiner_change_cost(fixture.problem, fixture.s1, bad),
        std::invalid_argument);
  }
}

TEST_CASE("restructure_steiner searches candidate subsets and trees") {
  const io::SteinerCase fixture = steiner_case();
  SUBCASE("zero budget keeps s1") {
    const auto report =
        restructure_steiner(fixture.problem, fixture.s1, fixture.s2, Budget{0});
    CHECK(report.s_star.edges == fixture.s1.edges);
    CHECK(report.s_star.steiner_used == fixture.s1.steiner_used);
    CHECK(report.change_cost == 0);
  }
  SUBCASE("vacuous budget reaches s2") {
    const auto report = restructure_steiner(fixture.problem, fixture.s1,
                                            fixture.s2, Budget{1000});
    CHECK(report.s_star.edges == fixture.s2.edges);
    CHECK(report.proximity.value == 0);
  }
  SUBCASE("budget 10 optimum matches enumeration") {
    const auto report = restructure_steiner(fixture.problem, fixture.s1,
                                            fixture.s2, Budget{10});
    const auto want = oracle::steiner_restructure(fixture.problem, fixture.s1,
                                                  fixture.s2, Budget{10});
    REQUIRE(want.found);
    CHECK(report.proximity.value == want.rho);
    CHECK(report.change_cost == want.cost);
    CHECK(report.s_star.edges == want.edges);
    CHECK(report.s_star.steiner_used == want.steiner);
    CHECK(steiner_tree_violations(fixture.problem, report.s_star).empty());
  }
  SUBCASE("budget sweep is monotone in proximity") {
    std::int64_t previous = -1;
    for (std::int64_t h = 0; h <= 12; ++h) {
      const auto report = restructure_steiner(fixture.problem, fixture.s1,
                                              fixture.s2, Budget{h});
      if (previous >= 0) CHECK(report.proximity.value <= previous);
      previous = report.proximity.value;
    }
  }
}

TEST_CASE("spanning tree validation catches structural defects") {
  const io::SpanningTreeCase fixture = tree_case();
  SUBCASE("cycle") {
    SpanningTree bad{edges_of({{1, 2}, {2, 3}, {2, 6}, {3, 6}, {4, 6}, {5, 6}})};
    CHECK_FALSE(spanning_tree_violations(fixture.graph, bad).empty());
  }
  SUBCASE("wrong edge count") {
    SpanningTree bad{edges_of({{1, 2}})};
    CHECK_FALSE(spanning_tree_violations(fixture.graph, bad).empty());
  }
  SUBCASE("foreign edge") {
    SpanningTree bad{
        edges_of({{1, 2}, {1, 3}, {2, 6}, {4, 6}, {5, 6}, {6, 7}})};
    const auto violations = spanning_tree_violations(fixture.graph, bad);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().find("(1,3)") != std::string::npos);
  }
}
