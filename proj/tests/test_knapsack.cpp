#include "doctest.h"
#include "oracles.hpp"
#include "restruct/knapsack.hpp"
#include "testutil.hpp"

using namespace restruct;
using namespace restruct::knapsack;

namespace {

Instance tiny(std::vector<Item> items, std::int64_t b1, std::int64_t b2) {
  return Instance{std::move(items), b1, b2};
}

}  // namespace

TEST_CASE("solve_base finds the profit-maximal feasible subset") {
  SUBCASE("nothing fits") {
    const auto instance =
        tiny({{1, 5, 9, 5, 9, {1, 1}}, {2, 7, 8, 7, 8, {1, 1}}}, 3, 3);
    CHECK(solve_base(instance, Stage::one).empty());
  }
  SUBCASE("single fitting item is taken") {
    const auto instance = tiny({{1, 5, 2, 5, 2, {1, 1}}}, 3, 3);
    CHECK(solve_base(instance, Stage::two) == Solution{1});
  }
  SUBCASE("matches exhaustive search on random 10-item instances") {
    testutil::Rng rng(101);
    for (int round = 0; round < 50; ++round) {
      const auto instance = testutil::random_knapsack(rng, 10, 20);
      for (const Stage stage : {Stage::one, Stage::two}) {
        const auto got = solve_base(instance, stage);
        const auto want = oracle::knapsack_base(instance, stage);
        CHECK(profit(instance, got, stage) == want.profit);
        CHECK(got == want.set);  // same tie-break, so sets agree exactly
      }
    }
  }
}

TEST_CASE("restructure_exact solves the two-budget model") {
  SUBCASE("zero budget freezes s1 when it stays feasible") {
    const auto instance = tiny({{1, 1, 1, 9, 1, {2, 2}},
                                {2, 1, 1, 9, 1, {2, 2}},
                                {3, 1, 1, 50, 1, {2, 2}}},
                               3, 3);
    const auto report =
        restructure_exact(instance, {1, 2}, std::nullopt, Budget{0});
    CHECK(report.feasible);
    CHECK(report.s_star == Solution{1, 2});
    CHECK(report.change_cost == 0);
    CHECK(report.delta.empty());
  }
  SUBCASE("vacuous budget reduces to the stage-2 base problem") {
    testutil::Rng rng(55);
    for (int round = 0; round < 30; ++round) {
      const auto instance = testutil::random_knapsack(rng, 9, 15);
      std::int64_t everything = 0;
      for (const auto& item : instance.items)
        everything += item.cost.h_minus + item.cost.h_plus;
      IdSet ids;
      for (const auto& item : instance.items) ids.push_back(item.id);
      IdSet s1 = testutil::random_subset(rng, ids);
      // keep s1 stage-1 feasible so it is a valid input
      while (weight(instance, s1, Stage::one) > instance.b1 && !s1.empty())
        s1.pop_back();
      const auto report =
          restructure_exact(instance, s1, std::nullopt, Budget{everything});
      const auto base = solve_base(instance, Stage::two);
      CHECK(report.feasible);
      CHECK(report.objective_stage2 == profit(instance, base, Stage::two));
    }
  }
  SUBCASE("random 6-item instances match subset enumeration at budget 4") {
    testutil::Rng rng(77);
    for (int round = 0; round < 60; ++round) {
      const auto instance = testutil::random_knapsack(rng, 6, 12);
      IdSet ids;
      for (const auto& item : instance.items) ids.push_back(item.id);
      IdSet s1 = testutil::random_subset(rng, ids);
      while (weight(instance, s1, Stage::one) > instance.b1 && !s1.empty())
        s1.pop_back();
      const auto report =
          restructure_exact(instance, s1, std::nullopt, Budget{4});
      const auto want = oracle::knapsack_restructure(instance, s1, Budget{4});
      CHECK(report.feasible == want.found);
      if (want.found) {
        CHECK(report.objective_stage2 == want.profit);
        CHECK(report.change_cost == want.change);
        CHECK(report.s_star == want.set);
      }
    }
  }
  SUBCASE("infeasible when s1 is overweight and deletions are unaffordable") {
    const auto instance = tiny({{1, 1, 1, 4, 9, {5, 5}}}, 1, 3);
    const auto report =
        restructure_exact(instance, {1}, std::nullopt, Budget{2});
    CHECK_FALSE(report.feasible);
    CHECK(report.s_star == Solution{1});  // reported as-is with the verdict
  }
}

TEST_CASE("restructure_exact oracle equivalence on random instances") {
  testutil::Rng rng(303);
  for (int round = 0; round < 80; ++round) {
    const auto instance = testutil::random_knapsack(rng, 12, 20);
    IdSet ids;
    for (const auto& item : instance.items) ids.push_back(item.id);
    IdSet s1 = testutil::random_subset(rng, ids);
    while (weight(instance, s1, Stage::one) > instance.b1 && !s1.empty())
      s1.pop_back();
    const Budget budget{testutil::pick(rng, 0, 14)};
    const auto report = restructure_exact(instance, s1, std::nullopt, budget);
    const auto want = oracle::knapsack_restructure(instance, s1, budget);
    CHECK(report.feasible == want.found);
    if (want.found) {
      CHECK(report.objective_stage2 == want.profit);
      CHECK(report.change_cost == want.change);
      CHECK(report.s_star == want.set);
    }
  }
}

TEST_CASE("against the base stage-2 optimum, proximity is the profit shortfall") {
  testutil::Rng rng(808);
  for (int round = 0; round < 40; ++round) {
    const auto instance = testutil::random_knapsack(rng, 9, 12);
    const auto s1 = solve_base(instance, Stage::one);
    const Budget budget{testutil::pick(rng, 0, 10)};
    const auto report = restructure_exact(instance, s1, std::nullopt, budget);
    if (!report.feasible) continue;
    const std::int64_t best =
        profit(instance, solve_base(instance, Stage::two), Stage::two);
    CHECK(report.objective_stage2 <= best);
    CHECK(report.proximity.value == best - report.objective_stage2);
  }
}

TEST_CASE("optimal objective is nondecreasing in the change budget") {
  testutil::Rng rng(404);
  for (int round = 0; round < 25; ++round) {
    const auto instance = testutil::random_knapsack(rng, 8, 12);
    const auto s1 = solve_base(instance, Stage::one);
    std::int64_t previous = -1;
    bool was_feasible = false;
    std::int64_t all_costs = 0;
    for (const auto& item : instance.items)
      all_costs += item.cost.h_minus + item.cost.h_plus;
    for (std::int64_t h = 0; h <= all_costs; ++h) {
      const auto report = restructure_exact(instance, s1, std::nullopt, Budget{h});
      if (!report.feasible) {
        CHECK_FALSE(was_feasible);  // feasibility is monotone too
        continue;
      }
      if (was_feasible) CHECK(report.objective_stage2 >= previous);
      previous = report.objective_stage2;
      was_feasible = true;
    }
  }
}

TEST_CASE("feasible reports satisfy both constraints when rechecked") {
  testutil::Rng rng(505);
  for (int round = 0; round < 60; ++round) {
    const auto instance = testutil::random_knapsack(rng, 9, 12);
    IdSet ids;
    for (const auto& item : instance.items) ids.push_back(item.id);
    IdSet s1 = testutil::random_subset(rng, ids);
    while (weight(instance, s1, Stage::one) > instance.b1 && !s1.empty())
      s1.pop_back();
    const Budget budget{testutil::pick(rng, 0, 10)};
    const auto report = restructure_exact(instance, s1, std::nullopt, budget);
    if (!report.feasible) continue;
    CHECK(weight(instance, report.s_star, Stage::two) <= instance.b2);
    std::map<ElementId, CostPair> costs;
    for (const auto& item : instance.items) costs[item.id] = item.cost;
    CHECK(change_cost(delta_of(s1, report.s_star), costs) <= budget.h_hat);
    CHECK(change_cost(delta_of(s1, report.s_star), costs) ==
          report.change_cost);
  }
}

TEST_CASE("restructure_reduced restricts changes to ranked candidates") {
  SUBCASE("k = n reproduces the exact result") {
    testutil::Rng rng(606);
    for (int round = 0; round < 25; ++round) {
      const auto instance = testutil::random_knapsack(rng, 8, 12);
      const auto s1 = solve_base(instance, Stage::one);
      const Budget budget{testutil::pick(rng, 0, 10)};
      const auto exact = restructure_exact(instance, s1, std::nullopt, budget);
      const auto reduced = restructure_reduced(
          instance, s1, std::nullopt, budget,
          static_cast<int>(instance.items.size()));
      CHECK(reduced.feasible == exact.feasible);
      CHECK(reduced.s_star == exact.s_star);
      CHECK(reduced.objective_stage2 == exact.objective_stage2);
      CHECK(reduced.method == Method::greedy);
    }
  }
  SUBCASE("k = 0 freezes s1 entirely") {
    const auto instance = tiny({{1, 1, 1, 1, 1, {1, 1}},
                                {2, 1, 1, 9, 1, {1, 1}}},
                               2, 2);
    const auto report =
        restructure_reduced(instance, {1}, std::nullopt, Budget{10}, 0);
    CHECK(report.feasible);
    CHECK(report.s_star == Solution{1});
  }
  SUBCASE("reduced objective never exceeds the exact one") {
    testutil::Rng rng(707);
    for (int round = 0; round < 40; ++round) {
      const auto instance = testutil::random_knapsack(rng, 12, 15);
      const auto s1 = solve_base(instance, Stage::one);
      const Budget budget{testutil::pick(rng, 0, 12)};
      const auto exact = restructure_exact(instance, s1, std::nullopt, budget);
      const auto reduced =
          restructure_reduced(instance, s1, std::nullopt, budget, 4);
      if (reduced.feasible && exact.feasible)
        CHECK(reduced.objective_stage2 <= exact.objective_stage2);
      if (reduced.feasible) CHECK(exact.feasible);
    }
  }
}
