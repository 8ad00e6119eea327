// Benchmark command line: run solvers over the test corpus and compute
// performance profiles from the recorded runtimes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "modopt/bench.hpp"

namespace {

using namespace modopt;

constexpr int kExitConfig = 2;
constexpr int kExitSolverFailed = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int run(const std::string& solver_list, const std::string& problem_list, int repeats, double rtol, double atol,
        int max_iters, const std::string& out_path) {
  const auto names = split_list(solver_list);
  if (names.empty()) throw ConfigurationError("no solvers given");
  std::vector<std::pair<std::string, Solver>> solvers;
  for (const auto& n : names) solvers.emplace_back(n, bench::named_solver(n, rtol, atol, max_iters));

  std::vector<bench::TestProblem> problems;
  if (problem_list == "all") {
    problems = bench::builtin_corpus();
  } else {
    for (const auto& n : split_list(problem_list)) problems.push_back(bench::find_problem(n));
  }
  if (problems.empty()) throw ConfigurationError("no problems given");

  bench::BenchOptions options;
  options.repeats = repeats;
  options.rtol = rtol;
  options.atol = atol;
  options.max_iters = max_iters;
  const auto records = bench::run_benchmark(problems, solvers, options);

  std::ofstream out(out_path);
  if (!out) throw ConfigurationError("cannot write " + out_path);
  bench::write_results_csv(out, records);

  int exit_code = 0;
  for (const auto& n : names) {
    int solved = 0;
    for (const auto& r : records)
      if (r.solver == n && r.converged) ++solved;
    std::cout << n << ": " << solved << "/" << problems.size() << " problems solved\n";
    if (solved == 0) exit_code = kExitSolverFailed;
  }
  return exit_code;
}

int profile(const std::string& in_path, const std::string& metric, const std::string& pair,
            const std::string& out_path, const std::string& plot_path) {
  if (metric != "runtime") throw ConfigurationError("unsupported metric: " + metric);
  std::ifstream in(in_path);
  if (!in) throw ConfigurationError("cannot read " + in_path);
  auto records = bench::read_results_csv(in);

  if (!pair.empty()) {
    const auto keep = split_list(pair);
    if (keep.size() != 2) throw ConfigurationError("--pair takes exactly two solver names");
    const std::set<std::string> wanted(keep.begin(), keep.end());
    for (const auto& name : keep) {
      const bool present =
          std::any_of(records.begin(), records.end(), [&](const bench::BenchRecord& r) { return r.solver == name; });
      if (!present) throw ConfigurationError("solver not in results: " + name);
    }
    std::erase_if(records, [&](const bench::BenchRecord& r) { return !wanted.count(r.solver); });
  }

  const auto prof = bench::performance_profile(records, bench::Metric::Runtime);
  for (const auto& p : prof.dropped) std::cerr << "warning: no solver finished " << p << "; dropped\n";

  std::ofstream out(out_path);
  if (!out) throw ConfigurationError("cannot write " + out_path);
  bench::write_profile_csv(out, prof);
  if (!plot_path.empty()) {
    std::ofstream svg(plot_path);
    if (!svg) throw ConfigurationError("cannot write " + plot_path);
    bench::write_profile_svg(svg, prof);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver benchmark over the built-in test corpus"};
  app.require_subcommand(1);

  std::string solver_list = "bfgs,ncg,lm,gn";
  std::string problem_list = "all";
  int repeats = 10;
  double rtol = 1e-5;
  double atol = 1e-6;
  int max_iters = 2000;
  std::string out_path = "results.csv";
  auto* run_cmd = app.add_subcommand("run", "time solvers on corpus problems");
  run_cmd->add_option("--solvers", solver_list, "comma-separated solver names");
  run_cmd->add_option("--problems", problem_list, "comma-separated problem names, or all");
  run_cmd->add_option("--repeats", repeats, "timed repeats per pair (minimum is kept)");
  run_cmd->add_option("--rtol", rtol);
  run_cmd->add_option("--atol", atol);
  run_cmd->add_option("--max-iters", max_iters);
  run_cmd->add_option("--out", out_path, "results CSV");

  std::string in_path = "results.csv";
  std::string metric = "runtime";
  std::string pair;
  std::string profile_out = "profile.csv";
  std::string plot_path;
  auto* prof_cmd = app.add_subcommand("profile", "performance profile from a results CSV");
  prof_cmd->add_option("--in", in_path, "results CSV");
  prof_cmd->add_option("--metric", metric);
  prof_cmd->add_option("--pair", pair, "restrict to two solvers, e.g. bfgs,lm");
  prof_cmd->add_option("--out", profile_out, "profile CSV");
  prof_cmd->add_option("--plot", plot_path, "optional SVG plot");

  auto* list_cmd = app.add_subcommand("list", "list solver and problem names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return run(solver_list, problem_list, repeats, rtol, atol, max_iters, out_path);
    if (*prof_cmd) return profile(in_path, metric, pair, profile_out, plot_path);
    if (*list_cmd) {
      std::cout << "solvers:";
      for (const auto& n : bench::solver_names()) std::cout << ' ' << n;
      std::cout << "\nproblems:";
      for (const auto& p : bench::builtin_corpus()) std::cout << ' ' << p.name;
      std::cout << '\n';
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
