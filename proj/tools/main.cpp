#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "troplin/core.hpp"
#include "troplin/exact.hpp"
#include "troplin/instance_io.hpp"
#include "troplin/lifting.hpp"
#include "troplin/types.hpp"

namespace {

using namespace troplin;

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;

std::optional<Value> guard_from_env() {
  const char* env = std::getenv("TROPLIN_GUARD");
  if (!env || !*env) return std::nullopt;
  std::istringstream in(env);
  Value v = 0;
  std::string rest;
  if (!(in >> v) || (in >> rest) || v < 1) {
    throw std::runtime_error("TROPLIN_GUARD must be a positive integer");
  }
  return v;
}

std::string solver_id(const std::string& algorithm, lifting::Strategy strategy) {
  if (algorithm == "lifting") {
    return std::string("lifting:") + lifting::strategy_name(strategy);
  }
  return algorithm;
}

void print_solution(std::ostream& out, const SolutionVector& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) out << ' ';
    out << x[j];
  }
  out << '\n';
}

void print_stats(std::ostream& out, const std::string& solver, const SolveOutcome& result) {
  out << "stats solver=" << solver
      << " verdict=" << (result.feasible() ? "feasible" : "infeasible")
      << " lifts=" << result.stats.lifts << " touched=" << result.stats.touched_columns
      << " guard_trips=" << result.stats.guard_trips << " nodes=" << result.stats.recursion_nodes
      << " memo_hits=" << result.stats.memo_hits
      << " assignment_calls=" << result.stats.assignment_calls
      << " micros=" << result.stats.wall_micros << '\n';
}

struct SolveArgs {
  std::string path;
  std::string algorithm = "auto";
  std::string strategy_name = "optimized";
  bool verify = false;
  bool stats = false;
  std::optional<Value> guard;
};

exact::Method make_method(const SolveArgs& args) {
  exact::Method method;
  if (args.algorithm == "lifting") {
    method.kind = exact::MethodKind::Lifting;
  } else if (args.algorithm == "exact") {
    method.kind = exact::MethodKind::Exact;
  } else {
    method.kind = exact::MethodKind::Auto;
  }
  const auto strategy = lifting::strategy_from_name(args.strategy_name);
  if (!strategy) {
    throw std::runtime_error("unknown lifting strategy: " + args.strategy_name);
  }
  method.strategy = *strategy;
  method.guard_bound = args.guard ? args.guard : guard_from_env();
  return method;
}

int run_solve(const SolveArgs& args) {
  const TropMatrix A = io::load_instance(args.path);
  const exact::Method method = make_method(args);
  const SolveOutcome result = exact::solve(A, method);
  if (result.feasible()) {
    std::cout << "FEASIBLE\n";
    print_solution(std::cout, result.solution);
  } else {
    std::cout << "INFEASIBLE\n";
  }
  if (args.stats) {
    print_stats(std::cout, solver_id(args.algorithm, method.strategy), result);
  }
  if (args.verify && result.feasible() && !verify_solution(A, result.solution)) {
    std::cerr << "verification failed: printed vector does not solve the instance\n";
    return kExitError;
  }
  return result.feasible() ? kExitFeasible : kExitInfeasible;
}

struct GenArgs {
  std::size_t rows = 1;
  std::size_t cols = 1;
  Value max_entry = 0;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string prefix = "instance_";
};

int run_gen(const GenArgs& args) {
  io::GenConfig config{args.rows, args.cols, args.max_entry, args.seed};
  for (std::size_t i = 0; i < args.count; ++i) {
    const TropMatrix A = io::generate_instance(config, i);
    std::ostringstream name;
    name << args.prefix;
    name.width(4);
    name.fill('0');
    name << i;
    const std::string path = name.str() + ".txt";
    io::save_instance(A, path);
    std::cout << path << '\n';
  }
  return 0;
}

struct RaceArgs {
  std::vector<std::string> paths;
  std::vector<std::string> strategies;
  std::optional<Value> guard;
};

int run_race(const RaceArgs& args) {
  std::vector<lifting::Strategy> strategies;
  if (args.strategies.empty()) {
    strategies.assign(std::begin(lifting::kAllStrategies), std::end(lifting::kAllStrategies));
  } else {
    for (const auto& name : args.strategies) {
      const auto s = lifting::strategy_from_name(name);
      if (!s) throw std::runtime_error("unknown lifting strategy: " + name);
      strategies.push_back(*s);
    }
  }
  const std::optional<Value> guard = args.guard ? args.guard : guard_from_env();

  std::cout << "instance,solver,verdict,lifts,guard_trips,micros\n";
  for (const auto& path : args.paths) {
    const TropMatrix A = io::load_instance(path);

    exact::Method exact_method;
    exact_method.kind = exact::MethodKind::Exact;
    const SolveOutcome reference = exact::solve(A, exact_method);

    const auto emit_row = [&](const std::string& solver, const SolveOutcome& r) {
      std::cout << path << ',' << solver << ','
                << (r.feasible() ? "feasible" : "infeasible") << ',' << r.stats.lifts << ','
                << r.stats.guard_trips << ',' << r.stats.wall_micros << '\n';
    };
    emit_row("exact", reference);

    std::optional<SolutionVector> lifting_solution;
    for (const lifting::Strategy strategy : strategies) {
      exact::Method method;
      method.kind = exact::MethodKind::Lifting;
      method.strategy = strategy;
      method.guard_bound = guard;
      const SolveOutcome result = exact::solve(A, method);
      emit_row(solver_id("lifting", strategy), result);
      if (result.verdict != reference.verdict) {
        std::cerr << "race: verdict disagreement on " << path << ": lifting:"
                  << lifting::strategy_name(strategy)
                  << (result.feasible() ? "=feasible" : "=infeasible") << " vs exact"
                  << (reference.feasible() ? "=feasible" : "=infeasible")
                  << " -- this indicates a solver bug\n";
        return kExitError;
      }
      if (result.feasible()) {
        if (lifting_solution && *lifting_solution != result.solution) {
          std::cerr << "race: lifting strategies returned different solution vectors on "
                    << path << " -- this indicates a solver bug\n";
          return kExitError;
        }
        lifting_solution = result.solution;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropical (min-plus) linear system solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance file");
  solve_cmd->add_option("path", solve_args.path, "instance file")->required();
  solve_cmd->add_option("--algorithm", solve_args.algorithm, "auto|lifting|exact")
      ->check(CLI::IsMember({"auto", "lifting", "exact"}));
  solve_cmd
      ->add_option("--lifting", solve_args.strategy_name,
                   "original|optimized|agg|combined-max|combined-min")
      ->check(CLI::IsMember({"original", "optimized", "agg", "combined-max", "combined-min"}));
  solve_cmd->add_flag("--verify", solve_args.verify, "re-verify the printed solution");
  solve_cmd->add_flag("--stats", solve_args.stats, "append a machine-readable stats line");
  Value guard_flag = 0;
  auto* guard_opt = solve_cmd->add_option("--guard", guard_flag,
                                          "guard bound for the lifting scheme");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate pseudorandom instance files");
  gen_cmd->add_option("--rows", gen_args.rows, "rows")->required();
  gen_cmd->add_option("--cols", gen_args.cols, "columns")->required();
  gen_cmd->add_option("--max", gen_args.max_entry, "maximal entry (entries uniform in [0,max])")
      ->required();
  gen_cmd->add_option("--seed", gen_args.seed, "generator seed");
  gen_cmd->add_option("--count", gen_args.count, "number of instances");
  gen_cmd->add_option("--out", gen_args.prefix, "output filename prefix");

  RaceArgs race_args;
  auto* race_cmd = app.add_subcommand("race", "run all strategies, emit CSV, cross-check");
  race_cmd->add_option("paths", race_args.paths, "instance files")->required();
  race_cmd->add_option("--strategies", race_args.strategies,
                       "lifting strategies to race (default: all)");
  Value race_guard_flag = 0;
  auto* race_guard_opt =
      race_cmd->add_option("--guard", race_guard_flag, "guard bound for the lifting scheme");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (solve_cmd->parsed()) {
      if (guard_opt->count()) solve_args.guard = guard_flag;
      return run_solve(solve_args);
    }
    if (gen_cmd->parsed()) {
      return run_gen(gen_args);
    }
    if (race_guard_opt->count()) race_args.guard = race_guard_flag;
    return run_race(race_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
