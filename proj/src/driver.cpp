#include "modopt/driver.hpp"

#include <cmath>

#include "modopt/linalg.hpp"

namespace modopt {

namespace {

constexpr double kAlphaFloor = 1e-12;

struct Current {
  Objective::Point point;
  FnInfo info;
};

FnInfo value_info(const Objective::Point& p) {
  FnInfo info;
  info.value = p.value;
  if (p.residual.size() > 0) info.residual = p.residual;
  return info;
}

// Derivative information at an accepted point; the BFGS matrix is attached by the caller.
FnInfo full_info(const Objective& objective, const ComposedSolver& solver, const Objective::Point& p) {
  FnInfo info = value_info(p);
  switch (solver.policy) {
    case InfoPolicy::GradientOnly:
    case InfoPolicy::Bfgs:
      info.grad = objective.gradient(p);
      break;
    case InfoPolicy::ResidualJacobian: {
      Matrix j = objective.jacobian(p);
      info.grad = 2.0 * linalg::transpose_times(j, p.residual);
      info.jacobian = std::move(j);
      break;
    }
    case InfoPolicy::TrueHessian: {
      info.grad = objective.gradient(p);
      auto grad_at = [&](const Vector& x) { return objective.gradient(objective.evaluate(x)); };
      info.hessian = HessianApprox{fd::hessian(grad_at, p.x), HessianForm::Direct};
      break;
    }
  }
  return info;
}

bool finite_info(const FnInfo& info) {
  if (info.grad && !info.grad->allFinite()) return false;
  if (info.jacobian && !info.jacobian->allFinite()) return false;
  if (info.hessian && !info.hessian->matrix.allFinite()) return false;
  return true;
}

Solution finish(Solution sol, const Current& cur, Result result, const descents::DescentCache& cache,
                DriverTrace* trace) {
  sol.value = cur.point.x;
  sol.fval = cur.point.value;
  if (cur.point.residual.size() > 0) sol.residual = cur.point.residual;
  sol.result = result;
  if (trace) trace->linear_solves = cache.linear_solves;
  return sol;
}

}  // namespace

Solution iterate(const Objective& objective, const ComposedSolver& solver, const Vector& x0,
                 const TerminationConfig& cfg, DriverTrace* trace) {
  cfg.validate();
  solver.validate();
  if (solver.needs_residuals() && !objective.is_residual())
    throw ConfigurationError(solver.name + " needs a residual objective");
  if (x0.size() == 0 || !x0.allFinite()) throw ConfigurationError("initial point must be nonempty and finite");

  Solution sol;
  descents::DescentCache cache;
  Current cur;
  cur.point = objective.evaluate(x0);
  sol.stats.fn_evals = 1;
  if (trace) {
    trace->accepted_iterates.clear();
    if (trace->record_iterates) trace->accepted_iterates.push_back(x0);
  }
  if (!cur.point.finite) return finish(sol, cur, Result::NonFiniteEncountered, cache, trace);

  HessianApprox bfgs = bfgs_initial(x0.size(), solver.use_inverse);
  try {
    cur.info = full_info(objective, solver, cur.point);
    sol.stats.grad_evals = 1;
    if (solver.policy == InfoPolicy::Bfgs) cur.info.hessian = bfgs;
    if (!finite_info(cur.info)) return finish(sol, cur, Result::NonFiniteEncountered, cache, trace);
    cur.info.check_consistency(x0.size());

    searches::SearchState state = searches::initial_state(solver.search);
    double alpha = searches::initial_alpha(solver.search);

    for (int it = 1; it <= cfg.max_iters; ++it) {
      sol.stats.iterations = it;
      const Vector step = descents::step(solver.descent, alpha, cur.info, cache);
      Current next;
      next.point = objective.evaluate(cur.point.x + step);
      ++sol.stats.fn_evals;
      next.info = value_info(next.point);

      auto [verdict, new_state] = searches::step(solver.search, next.info, cur.info, step, state);
      state = std::move(new_state);
      alpha = verdict.alpha;
      const bool no_op = next.point.finite && (next.point.x.array() == cur.point.x.array()).all();

      if (!(verdict.accept || no_op)) {
        ++sol.stats.rejected_steps;
        if (!(alpha >= kAlphaFloor)) return finish(sol, cur, Result::NonFiniteEncountered, cache, trace);
        continue;
      }

      ++sol.stats.accepted_steps;
      if (!next.point.finite || !next.point.x.allFinite())
        return finish(sol, cur, Result::NonFiniteEncountered, cache, trace);
      next.info = full_info(objective, solver, next.point);
      ++sol.stats.grad_evals;
      if (!finite_info(next.info)) return finish(sol, cur, Result::NonFiniteEncountered, cache, trace);
      if (solver.policy == InfoPolicy::Bfgs) {
        bfgs = bfgs_update(bfgs, next.point.x - cur.point.x, *next.info.grad - *cur.info.grad);
        next.info.hessian = bfgs;
      }

      const bool converged =
          cauchy_termination(cur.point.x, next.point.x, cur.point.value, next.point.value, cfg);
      cur = std::move(next);
      cache.invalidate();
      if (trace && trace->record_iterates) trace->accepted_iterates.push_back(cur.point.x);
      if (converged) return finish(sol, cur, Result::Converged, cache, trace);
    }
  } catch (const LinearSolveError&) {
    return finish(sol, cur, Result::LinearSolveFailed, cache, trace);
  } catch (const RootFindStalled&) {
    return finish(sol, cur, Result::LinearSolveFailed, cache, trace);
  }
  return finish(sol, cur, Result::MaxItersReached, cache, trace);
}

}  // namespace modopt
