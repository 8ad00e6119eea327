#include "modopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "modopt/api.hpp"

namespace modopt::bench {

bool quality_gate(double f_final, double f_star, double eps_a, double eps_r) {
  return std::abs(f_final - f_star) / (eps_a + eps_r * std::abs(f_star)) < 1.0;
}

Timer steady_timer() {
  return [] {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
  };
}

std::vector<std::string> solver_names() {
  return {"bfgs", "bfgs_inverse", "ncg", "gd", "gn", "lm", "lm1", "lm2", "hybrid", "newton", "chord", "fixed_point"};
}

Solver named_solver(const std::string& name, double rtol, double atol, int max_iters) {
  TerminationConfig cfg;
  cfg.rtol = rtol;
  cfg.atol = atol;
  cfg.max_iters = max_iters;
  auto with = [&](ComposedSolver s) -> Solver {
    s.termination = cfg;
    s.validate();
    return s;
  };
  using descents::SolveMode;
  if (name == "bfgs") return with(make_bfgs(rtol, atol));
  if (name == "bfgs_inverse") return with(make_bfgs(rtol, atol, true));
  if (name == "ncg") return with(make_nonlinear_cg(rtol, atol));
  if (name == "gd") return with(make_gradient_descent(rtol, atol));
  if (name == "gn") return with(make_gauss_newton(rtol, atol));
  if (name == "lm" || name == "lm2") return with(make_levenberg_marquardt(rtol, atol, SolveMode::AugmentedLstsq));
  if (name == "lm1") return with(make_levenberg_marquardt(rtol, atol, SolveMode::NormalEquations));
  if (name == "hybrid") {
    ComposedSolver s = make_bfgs(rtol, atol, false, searches::LearningRate{0.1}, descents::DoglegDescent{});
    s.name = "hybrid";
    return with(s);
  }
  if (name == "newton") return NewtonRootFinder{cfg, JacobianMode::Newton};
  if (name == "chord") return NewtonRootFinder{cfg, JacobianMode::Chord};
  if (name == "fixed_point") return FixedPointIteration{cfg};
  throw ConfigurationError("unknown solver: " + name);
}

Solution solve(const TestProblem& problem, const Solver& solver) {
  switch (problem.kind) {
    case ProblemKind::Minimise:
      return minimise(problem.scalar, solver, problem.x0);
    case ProblemKind::LeastSquares:
      return least_squares(problem.vector, solver, problem.x0);
    case ProblemKind::RootFind:
      return root_find(problem.vector, solver, problem.x0);
    case ProblemKind::FixedPoint:
      return fixed_point(problem.vector, solver, problem.x0);
  }
  throw ConfigurationError("unknown problem kind");
}

std::vector<BenchRecord> run_benchmark(const std::vector<TestProblem>& problems,
                                       const std::vector<std::pair<std::string, Solver>>& solvers,
                                       const BenchOptions& options) {
  if (options.repeats < 1) throw ConfigurationError("repeats must be at least 1");
  const Timer timer = options.timer ? options.timer : steady_timer();
  const double gate_a = options.gate_atol.value_or(options.atol);
  const double gate_r = options.gate_rtol.value_or(options.rtol);
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<BenchRecord> records;
  for (const auto& [solver_name, solver] : solvers) {
    for (const auto& problem : problems) {
      BenchRecord rec;
      rec.solver = solver_name;
      rec.problem = problem.name;
      rec.min_runtime = inf;
      rec.final_f = std::numeric_limits<double>::quiet_NaN();
      double best = inf;
      bool passed = false;
      for (int rep = 0; rep < options.repeats; ++rep) {
        try {
          const double start = timer();
          const Solution sol = solve(problem, solver);
          const double elapsed = timer() - start;
          rec.iterations = sol.stats.iterations;
          rec.final_f = problem.objective(sol.value);
          passed = problem.f_star ? quality_gate(rec.final_f, *problem.f_star, gate_a, gate_r) : sol.converged();
          best = std::min(best, elapsed);
        } catch (const ConfigurationError&) {
          passed = false;
          break;
        }
      }
      rec.converged = passed;
      rec.min_runtime = passed ? best : inf;
      records.push_back(rec);
    }
  }
  return records;
}

std::vector<double> default_taus() {
  std::vector<double> taus;
  for (int k = 0; k <= 140; ++k) taus.push_back(std::exp2(k / 20.0));
  return taus;
}

Profile performance_profile(const std::vector<BenchRecord>& records, Metric metric,
                            const std::vector<double>& taus) {
  (void)metric;  // runtime is the only metric
  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  std::map<std::pair<std::string, std::string>, double> times;
  for (const auto& r : records) {
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) solvers.push_back(r.solver);
    if (std::find(problems.begin(), problems.end(), r.problem) == problems.end()) problems.push_back(r.problem);
    const double t = r.converged ? r.min_runtime : std::numeric_limits<double>::infinity();
    times[{r.solver, r.problem}] = t;
  }
  if (solvers.size() < 2) throw ConfigurationError("a performance profile needs at least two solvers");
  if (problems.empty()) throw ConfigurationError("a performance profile needs at least one problem");
  if (!std::is_sorted(taus.begin(), taus.end())) throw ConfigurationError("tau grid must be increasing");

  auto time_of = [&](const std::string& s, const std::string& p) {
    const auto it = times.find({s, p});
    return it == times.end() ? std::numeric_limits<double>::infinity() : it->second;
  };

  Profile out;
  std::vector<std::string> kept;
  std::map<std::string, double> best;
  for (const auto& p : problems) {
    double b = std::numeric_limits<double>::infinity();
    for (const auto& s : solvers) b = std::min(b, time_of(s, p));
    if (std::isfinite(b)) {
      kept.push_back(p);
      best[p] = b;
    } else {
      out.dropped.push_back(p);
    }
  }
  for (const auto& s : solvers) {
    ProfileCurve curve;
    curve.solver = s;
    curve.taus = taus;
    std::vector<double> ratios;
    for (const auto& p : kept) {
      const double t = time_of(s, p);
      // Equal times give ratio 1 exactly, including zero-time ties.
      ratios.push_back(t == best[p] ? 1.0 : t / best[p]);
    }
    for (double tau : taus) {
      const auto solved = std::count_if(ratios.begin(), ratios.end(), [tau](double r) { return r <= tau; });
      curve.rho.push_back(kept.empty() ? 0.0 : static_cast<double>(solved) / static_cast<double>(kept.size()));
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "solver,problem,min_runtime_s,converged,iterations,final_f\n";
  out << std::setprecision(17);
  for (const auto& r : records) {
    out << r.solver << ',' << r.problem << ',';
    if (std::isinf(r.min_runtime))
      out << "inf";
    else
      out << r.min_runtime;
    out << ',' << (r.converged ? "true" : "false") << ',' << r.iterations << ',' << r.final_f << '\n';
  }
}

namespace {
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_number(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigurationError("malformed number in results: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigurationError("malformed number in results: " + s);
  }
}
}  // namespace

std::vector<BenchRecord> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "solver,problem,min_runtime_s,converged,iterations,final_f")
    throw ConfigurationError("results file has an unexpected header");
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 6) throw ConfigurationError("results row must have 6 fields: " + line);
    BenchRecord r;
    r.solver = f[0];
    r.problem = f[1];
    r.min_runtime = parse_number(f[2]);
    if (f[3] != "true" && f[3] != "false") throw ConfigurationError("converged must be true or false");
    r.converged = f[3] == "true";
    r.iterations = static_cast<int>(parse_number(f[4]));
    r.final_f = parse_number(f[5]);
    records.push_back(r);
  }
  return records;
}

void write_profile_csv(std::ostream& out, const Profile& profile) {
  out << "solver,tau,rho\n" << std::setprecision(17);
  for (const auto& c : profile.curves)
    for (std::size_t i = 0; i < c.taus.size(); ++i) out << c.solver << ',' << c.taus[i] << ',' << c.rho[i] << '\n';
}

void write_profile_svg(std::ostream& out, const Profile& profile) {
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double margin = 50.0;
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  double log_max = 1.0;
  for (const auto& c : profile.curves)
    if (!c.taus.empty()) log_max = std::max(log_max, std::log2(c.taus.back()));
  auto px = [&](double tau) { return margin + (width - 2 * margin) * std::log2(tau) / log_max; };
  auto py = [&](double rho) { return height - margin - (height - 2 * margin) * rho; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << width - margin << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << margin << "\" y2=\"" << py(1)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">log2(tau)</text>\n";
  out << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
      << ")\" text-anchor=\"middle\">rho(tau)</text>\n";
  for (std::size_t k = 0; k < profile.curves.size(); ++k) {
    const auto& c = profile.curves[k];
    const char* colour = colours[k % 6];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    for (std::size_t i = 0; i < c.taus.size(); ++i) {
      // Step function: hold the previous value up to the next tau.
      if (i > 0) out << px(c.taus[i]) << ',' << py(c.rho[i - 1]) << ' ';
      out << px(c.taus[i]) << ',' << py(c.rho[i]) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << width - margin - 100 << "\" y=\"" << margin + 18.0 * static_cast<double>(k)
        << "\" fill=\"" << colour << "\">" << c.solver << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace modopt::bench
