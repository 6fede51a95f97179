#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "restruct/io.hpp"

// Command-line surface. Exit codes: 0 = solved/verified, 1 = infeasible or
// failed verification, 2 = invalid input.

namespace {

using restruct::Budget;
using restruct::Method;
using restruct::ProximityMode;
namespace io = restruct::io;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInvalidInput = 2;

void emit(const io::json& payload, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << io::canonical_dump(payload);
    return;
  }
  io::save_report(payload, output_path);
}

io::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::ParseError("cannot open " + path);
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw io::ParseError(path + ": " + e.what());
  }
}

Method parse_method(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "greedy") return Method::greedy;
  if (name == "local") return Method::local;
  throw io::ParseError("unknown method '" + name + "'");
}

struct BenchArgs {
  int cases = 25;
  unsigned seed = 1;
};

int run_bench(const BenchArgs& args);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solution restructuring toolkit: base solvers and budgeted "
               "restructuring for knapsack, multiple-choice, assignment, "
               "spanning-tree and Steiner-tree instances"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string output_path;
  std::string report_path;
  std::string method_name = "exact";
  std::string proximity_name;
  std::optional<std::int64_t> budget;
  int stage = 2;
  int candidates = 4;
  bool three_exchange = false;

  auto add_common = [&](CLI::App* cmd, bool needs_instance) {
    if (needs_instance)
      cmd->add_option("--instance", instance_path, "instance JSON path")
          ->required();
    cmd->add_option("--output", output_path, "write the result here");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the base problem");
  add_common(solve, true);
  solve->add_option("--stage", stage, "stage 1 or 2")->check(CLI::Range(1, 2));

  CLI::App* restructure =
      app.add_subcommand("restructure", "budgeted restructuring of s1");
  add_common(restructure, true);
  restructure->add_option("--budget", budget, "change-cost budget override");
  restructure->add_option("--method", method_name, "exact|greedy|local");
  restructure->add_option("--proximity", proximity_name,
                          "objective|structural (tree families)");
  restructure->add_option("--candidates", candidates,
                          "candidate count for the reduced knapsack method");
  restructure->add_flag("--three-exchange", three_exchange,
                        "also try 3-exchanges in local assignment search");

  CLI::App* diff =
      app.add_subcommand("diff", "delta between s1 and the goal solution");
  add_common(diff, true);

  CLI::App* verify =
      app.add_subcommand("verify", "re-check a report against its instance");
  add_common(verify, true);
  verify->add_option("--report", report_path, "report JSON path")->required();
  verify->add_option("--budget", budget, "change-cost budget override");

  CLI::App* fixtures =
      app.add_subcommand("fixtures", "list or write bundled instances");
  std::string fixture_name;
  fixtures->add_option("name", fixture_name, "fixture to write");
  fixtures->add_option("--output", output_path, "write the fixture here");

  CLI::App* bench = app.add_subcommand(
      "bench", "timing run over randomized instances per family");
  BenchArgs bench_args;
  bench->add_option("--cases", bench_args.cases, "instances per family")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (solve->parsed()) {
      const io::InstanceFile file = io::load_instance(instance_path);
      emit(io::run_solve(file, stage == 1 ? restruct::knapsack::Stage::one
                                          : restruct::knapsack::Stage::two),
           output_path);
      return kOk;
    }
    if (restructure->parsed()) {
      const io::InstanceFile file = io::load_instance(instance_path);
      io::CommandOptions options;
      options.budget = budget;
      options.method = parse_method(method_name);
      if (!proximity_name.empty()) {
        if (proximity_name == "objective")
          options.proximity = ProximityMode::objective;
        else if (proximity_name == "structural")
          options.proximity = ProximityMode::structural;
        else
          throw io::ParseError("unknown proximity mode '" + proximity_name +
                               "'");
      }
      options.candidates = candidates;
      options.three_exchange = three_exchange;
      bool feasible = true;
      emit(io::run_restructure(file, options, &feasible), output_path);
      return feasible ? kOk : kInfeasible;
    }
    if (diff->parsed()) {
      const io::InstanceFile file = io::load_instance(instance_path);
      emit(io::run_diff(file), output_path);
      return kOk;
    }
    if (verify->parsed()) {
      const io::InstanceFile file = io::load_instance(instance_path);
      const io::VerifyResult result =
          io::run_verify(file, load_json(report_path), budget);
      io::json payload{{"ok", result.ok}, {"failures", result.failures}};
      emit(payload, output_path);
      return result.ok ? kOk : kInfeasible;
    }
    if (fixtures->parsed()) {
      if (fixture_name.empty()) {
        for (const std::string& name : io::fixture_names())
          std::cout << name << "\n";
        return kOk;
      }
      const io::InstanceFile file = io::fixture(fixture_name);
      emit(io::to_json(file), output_path);
      return kOk;
    }
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const io::SchemaError& e) {
    std::cerr << e.what() << "\n";
    return kInvalidInput;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

namespace {

// Deterministic micro-benchmark: random instances per family, exact vs
// heuristic objective gap and wall time.
int run_bench(const BenchArgs& args) {
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(args.seed);
  auto rand_int = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };

  struct Line {
    std::string family;
    double exact_ms = 0;
    double heuristic_ms = 0;
    int heuristic_matches = 0;
  };
  std::vector<Line> lines;

  {
    Line line{.family = "knapsack"};
    for (int n = 0; n < args.cases; ++n) {
      restruct::knapsack::Instance instance;
      const int items = static_cast<int>(rand_int(6, 12));
      for (int i = 0; i < items; ++i)
        instance.items.push_back({i + 1, rand_int(0, 20), rand_int(1, 9),
                                  rand_int(0, 20), rand_int(1, 9),
                                  {rand_int(0, 4), rand_int(0, 4)}});
      instance.b1 = rand_int(5, 30);
      instance.b2 = rand_int(5, 30);
      const auto s1 =
          restruct::knapsack::solve_base(instance, restruct::knapsack::Stage::one);
      const Budget budget{rand_int(0, 12)};
      const auto t0 = clock::now();
      const auto exact = restruct::knapsack::restructure_exact(
          instance, s1, std::nullopt, budget);
      const auto t1 = clock::now();
      const auto reduced = restruct::knapsack::restructure_reduced(
          instance, s1, std::nullopt, budget, 4);
      const auto t2 = clock::now();
      line.exact_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
      line.heuristic_ms +=
          std::chrono::duration<double, std::milli>(t2 - t1).count();
      if (reduced.feasible && exact.feasible &&
          reduced.objective_stage2 == exact.objective_stage2)
        ++line.heuristic_matches;
    }
    lines.push_back(line);
  }

  {
    Line line{.family = "assignment"};
    for (int n = 0; n < args.cases; ++n) {
      const int size = static_cast<int>(rand_int(4, 7));
      restruct::assignment::ProfitMatrix c;
      restruct::assignment::ChangeCostMatrix h;
      c.c.assign(size, std::vector<std::int64_t>(size, 0));
      h.h.assign(size, std::vector<std::int64_t>(size, 0));
      for (int i = 0; i < size; ++i)
        for (int p = 0; p < size; ++p) {
          c.c[i][p] = rand_int(0, 20);
          h.h[i][p] = i == p ? 0 : rand_int(1, 4);
        }
      restruct::assignment::Permutation s1(size);
      for (int i = 0; i < size; ++i) s1[i] = i;
      std::shuffle(s1.begin(), s1.end(), rng);
      const auto s2 = restruct::assignment::solve_base(c);
      const Budget budget{rand_int(0, 10)};
      const auto t0 = clock::now();
      const auto exact = restruct::assignment::restructure(
          s1, s2, c, h, budget, restruct::assignment::SearchMethod::exact);
      const auto t1 = clock::now();
      const auto local = restruct::assignment::restructure(
          s1, s2, c, h, budget, restruct::assignment::SearchMethod::exchange);
      const auto t2 = clock::now();
      line.exact_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
      line.heuristic_ms +=
          std::chrono::duration<double, std::milli>(t2 - t1).count();
      if (local.proximity.value == exact.proximity.value)
        ++line.heuristic_matches;
    }
    lines.push_back(line);
  }

  std::cout << "family       cases  exact_ms  heuristic_ms  heuristic_optimal\n";
  for (const Line& line : lines) {
    std::printf("%-12s %5d  %8.2f  %12.2f  %d/%d\n", line.family.c_str(),
                args.cases, line.exact_ms, line.heuristic_ms,
                line.heuristic_matches, args.cases);
  }
  return kOk;
}

}  // namespace
