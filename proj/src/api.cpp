#include "modopt/api.hpp"

#include "modopt/driver.hpp"
#include "modopt/overloaded.hpp"

namespace modopt {

std::set<ProblemKind> native_kinds(const Solver& solver) {
  return std::visit(overloaded{
                        [](const ComposedSolver& s) -> std::set<ProblemKind> {
                          if (s.needs_residuals()) return {ProblemKind::LeastSquares};
                          return {ProblemKind::Minimise};
                        },
                        [](const NewtonRootFinder&) -> std::set<ProblemKind> { return {ProblemKind::RootFind}; },
                        [](const BisectionRootFinder&) -> std::set<ProblemKind> { return {ProblemKind::RootFind}; },
                        [](const FixedPointIteration&) -> std::set<ProblemKind> {
                          return {ProblemKind::FixedPoint};
                        },
                    },
                    solver);
}

std::vector<ProblemKind> lowering_chain(ProblemKind kind, const Solver& solver) {
  const std::set<ProblemKind> native = native_kinds(solver);
  std::vector<ProblemKind> chain{kind};
  while (!native.count(chain.back())) {
    switch (chain.back()) {
      case ProblemKind::FixedPoint:
        chain.push_back(ProblemKind::RootFind);
        break;
      case ProblemKind::RootFind:
        chain.push_back(ProblemKind::LeastSquares);
        break;
      case ProblemKind::LeastSquares:
        chain.push_back(ProblemKind::Minimise);
        break;
      case ProblemKind::Minimise:
        throw ConfigurationError("solver " + name(solver) + " cannot handle a " + to_string(kind) + " problem");
    }
  }
  return chain;
}

namespace {

void validate_solver(const Solver& solver) {
  if (const auto* s = std::get_if<ComposedSolver>(&solver)) s->validate();
  termination(solver).validate();
}

// F(x) = f(x) - x, with Jacobian J_f - I when J_f is known.
VectorFunction fixed_point_residual(const VectorFunction& fn) {
  VectorFunction out;
  out.value = [value = fn.value](const Vector& x) -> Vector {
    Vector fx = value(x);
    if (fx.size() != x.size()) throw ConfigurationError("fixed-point map must return a vector of the input size");
    return fx - x;
  };
  if (fn.jacobian) {
    out.jacobian = [jac = fn.jacobian](const Vector& x) -> Matrix {
      Matrix j = jac(x);
      j.diagonal().array() -= 1.0;
      return j;
    };
  }
  return out;
}

Solution run_composed(const Objective& objective, const Solver& solver, const Vector& x0) {
  const auto& composed = std::get<ComposedSolver>(solver);
  return iterate(objective, composed, x0, composed.termination);
}

// Solves F(x) = 0 for a chain that starts at RootFind.
Solution solve_root(const VectorFunction& f, const Solver& solver, const Vector& x0,
                    const std::vector<ProblemKind>& chain) {
  const ProblemKind target = chain.back();
  Solution sol;
  if (target == ProblemKind::RootFind) {
    if (const auto* newton = std::get_if<NewtonRootFinder>(&solver)) {
      sol = run_newton(f, x0, *newton);
    } else {
      const auto& bisection = std::get<BisectionRootFinder>(solver);
      if (x0.size() != 1) throw ConfigurationError("bisection needs a one-dimensional problem");
      auto scalar = [&f](double t) -> double {
        const Vector v = f.value(Vector::Constant(1, t));
        if (v.size() != 1) throw ConfigurationError("bisection needs a one-dimensional problem");
        return v[0];
      };
      sol = run_bisection(scalar, bisection);
    }
  } else {
    sol = run_composed(Objective::residual(f), solver, x0);
    // The driver keeps the residual of the returned point; reuse it instead of calling f again.
    sol.stats.residual_check = sol.residual ? max_norm(*sol.residual) : max_norm(f.value(sol.value));
  }
  return sol;
}

}  // namespace

Solution minimise(const ScalarFunction& fn, const Solver& solver, const Vector& x0) {
  validate_solver(solver);
  const auto chain = lowering_chain(ProblemKind::Minimise, solver);
  Solution sol = run_composed(Objective::scalar(fn), solver, x0);
  sol.lowering = chain;
  return sol;
}

Solution least_squares(const VectorFunction& fn, const Solver& solver, const Vector& x0) {
  validate_solver(solver);
  const auto chain = lowering_chain(ProblemKind::LeastSquares, solver);
  // Both targets consume the residual form; minimisers see sum(r_i^2) and 2 J^T r.
  Solution sol = run_composed(Objective::residual(fn), solver, x0);
  sol.lowering = chain;
  return sol;
}

Solution root_find(const VectorFunction& fn, const Solver& solver, const Vector& x0) {
  validate_solver(solver);
  const auto chain = lowering_chain(ProblemKind::RootFind, solver);
  Solution sol = solve_root(fn, solver, x0, chain);
  sol.lowering = chain;
  return sol;
}

Solution fixed_point(const VectorFunction& fn, const Solver& solver, const Vector& x0) {
  validate_solver(solver);
  const auto chain = lowering_chain(ProblemKind::FixedPoint, solver);
  Solution sol;
  if (chain.back() == ProblemKind::FixedPoint) {
    sol = run_fixed_point(fn, x0, std::get<FixedPointIteration>(solver));
  } else {
    sol = solve_root(fixed_point_residual(fn), solver, x0, chain);
  }
  sol.lowering = chain;
  return sol;
}

}  // namespace modopt
