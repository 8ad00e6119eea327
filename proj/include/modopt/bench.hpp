#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modopt/core.hpp"
#include "modopt/objective.hpp"
#include "modopt/sensitivity.hpp"
#include "modopt/solvers.hpp"

namespace modopt::bench {

/// A corpus problem with its canonical starting point.
///
/// Minimise problems use `scalar`; the other kinds use `vector` (residuals,
/// root equations or the fixed-point map). `objective` is the scalar the
/// quality gate compares against f_star: f itself, or the sum of squares of
/// the residuals / root equations / f(x) - x.
struct TestProblem {
  std::string name;
  ProblemKind kind = ProblemKind::LeastSquares;
  ScalarFunction scalar;
  VectorFunction vector;
  Vector x0;
  std::optional<double> f_star;
  std::optional<Vector> x_star;

  Index dim() const { return x0.size(); }
  double objective(const Vector& x) const;
};

/// Rosenbrock in residual form: the blocks scaling (x_{i+1} - x_i^2) and
/// 1 - x_i for i < n - 1, concatenated.
TestProblem rosenbrock(Index n, double scaling, Vector x0);

TestProblem biggs_exp6();

/// Noisy linear regression: `samples` rows of standard normal features, the
/// given weights and Gaussian noise of standard deviation `noise`, all from
/// a fixed-seed generator.
struct Regression {
  TestProblem problem;
  Matrix features;  // samples x weights
  Vector targets;
  Vector weights;
};
Regression linear_regression(std::uint64_t seed = 0, Index samples = 99, double noise = 0.1);

std::vector<TestProblem> builtin_corpus();

/// Looks up a corpus problem by name; throws ConfigurationError if absent.
TestProblem find_problem(const std::string& name);

/// A problem with parameters, its parameter value and a starting point.
struct ParametricTestProblem {
  std::string name;
  ParametricProblem problem;
  Vector theta;
  Vector x0;
};

std::vector<ParametricTestProblem> parametric_corpus();

/// |f_final - f_star| / (eps_a + eps_r |f_star|) < 1.
bool quality_gate(double f_final, double f_star, double eps_a, double eps_r);

struct BenchRecord {
  std::string solver;
  std::string problem;
  double min_runtime = 0.0;  // seconds; +infinity when the run failed
  bool converged = false;
  int iterations = 0;
  double final_f = 0.0;
};

using Timer = std::function<double()>;

/// Seconds from a monotonic clock.
Timer steady_timer();

struct BenchOptions {
  int repeats = 10;
  double rtol = 1e-5;
  double atol = 1e-6;
  int max_iters = 2000;
  /// Quality-gate tolerances; default to the solver tolerances when unset.
  std::optional<double> gate_rtol;
  std::optional<double> gate_atol;
  Timer timer;  // steady_timer() when empty
};

/// Solver by command-line name: bfgs, bfgs_inverse, ncg, gd, gn, lm (= lm2),
/// lm1, lm2, hybrid, newton, chord, fixed_point.
Solver named_solver(const std::string& name, double rtol, double atol, int max_iters);

std::vector<std::string> solver_names();

/// Runs one problem through the entry point matching its kind.
Solution solve(const TestProblem& problem, const Solver& solver);

/// Times each (solver, problem) pair `repeats` times and keeps the minimum.
///
/// A run passes when the quality gate holds (problems with known f_star) or
/// the solve reports Converged (otherwise). Failed runs, including solver /
/// problem kind mismatches, get an infinite runtime.
std::vector<BenchRecord> run_benchmark(const std::vector<TestProblem>& problems,
                                       const std::vector<std::pair<std::string, Solver>>& solvers,
                                       const BenchOptions& options = {});

enum class Metric { Runtime };

struct ProfileCurve {
  std::string solver;
  std::vector<double> taus;
  std::vector<double> rho;
};

struct Profile {
  std::vector<ProfileCurve> curves;
  std::vector<std::string> dropped;  // problems no solver finished
};

/// 2^(k/20) for k = 0..140, i.e. 1 to 2^7.
std::vector<double> default_taus();

/// Performance profile: r = R / min_s R per problem, rho_s(tau) the fraction
/// of (kept) problems with r <= tau. Solvers missing a record count as failed.
Profile performance_profile(const std::vector<BenchRecord>& records, Metric metric = Metric::Runtime,
                            const std::vector<double>& taus = default_taus());

void write_results_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_results_csv(std::istream& in);
void write_profile_csv(std::ostream& out, const Profile& profile);
void write_profile_svg(std::ostream& out, const Profile& profile);

}  // namespace modopt::bench
