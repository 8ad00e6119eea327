#include "modopt/solvers.hpp"

#include <cmath>

#include "modopt/linalg.hpp"
#include "modopt/overloaded.hpp"

namespace modopt {

std::string to_string(InfoPolicy policy) {
  switch (policy) {
    case InfoPolicy::GradientOnly:
      return "gradient_only";
    case InfoPolicy::Bfgs:
      return "bfgs";
    case InfoPolicy::ResidualJacobian:
      return "residual_jacobian";
    case InfoPolicy::TrueHessian:
      return "true_hessian";
  }
  return "unknown";
}

bool ComposedSolver::needs_residuals() const { return policy == InfoPolicy::ResidualJacobian; }

void ComposedSolver::validate() const {
  termination.validate();
  searches::validate(search);
  const bool quadratic = policy != InfoPolicy::GradientOnly;
  if (descents::manages_direction(descent) && policy != InfoPolicy::GradientOnly)
    throw ConfigurationError(name + ": nonlinear CG manages its own direction and needs the gradient-only policy");
  if (descents::needs_quadratic_model(descent) && !quadratic)
    throw ConfigurationError(name + ": descent " + descents::name(descent) +
                             " needs a Hessian approximation or a residual Jacobian");
  if (descents::needs_residual_model(descent) && policy != InfoPolicy::ResidualJacobian)
    throw ConfigurationError(name + ": augmented least-squares solves need the residual-Jacobian policy");
  if (searches::needs_quadratic_model(search) && !quadratic)
    throw ConfigurationError(name + ": classical trust region needs a quadratic model");
  if (use_inverse && policy != InfoPolicy::Bfgs)
    throw ConfigurationError(name + ": use_inverse applies to the BFGS policy only");
}

ComposedSolver compose(std::string name, InfoPolicy policy, searches::Search search, descents::Descent descent,
                       TerminationConfig termination, bool use_inverse) {
  ComposedSolver s{std::move(name), policy, use_inverse, std::move(search), std::move(descent),
                   std::move(termination)};
  s.validate();
  return s;
}

namespace {
TerminationConfig tolerances(double rtol, double atol) {
  TerminationConfig cfg;
  cfg.rtol = rtol;
  cfg.atol = atol;
  return cfg;
}
}  // namespace

HessianApprox bfgs_initial(Index n, bool use_inverse) {
  return {Matrix::Identity(n, n), use_inverse ? HessianForm::Inverse : HessianForm::Direct};
}

HessianApprox bfgs_update(const HessianApprox& approx, const Vector& s, const Vector& y) {
  if (s.size() != y.size() || s.size() != approx.matrix.rows())
    throw ConfigurationError("bfgs update: size mismatch");
  const double ys = y.dot(s);
  if (!(ys > 1e-10 * s.norm() * y.norm())) return approx;
  HessianApprox out = approx;
  const Matrix& m = approx.matrix;
  if (approx.form == HessianForm::Direct) {
    const Vector bs = m * s;
    const double sbs = s.dot(bs);
    if (!(sbs > 0.0)) return approx;
    out.matrix = m - (bs * bs.transpose()) / sbs + (y * y.transpose()) / ys;
  } else {
    const double rho = 1.0 / ys;
    const Vector hy = m * y;
    const double yhy = y.dot(hy);
    // (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded
    out.matrix = m - rho * (s * hy.transpose() + hy * s.transpose()) +
                 (rho * rho * yhy + rho) * (s * s.transpose());
  }
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  return out;
}

ComposedSolver make_bfgs(double rtol, double atol, bool use_inverse, searches::Search search,
                         descents::Descent descent) {
  return compose("bfgs", InfoPolicy::Bfgs, std::move(search), std::move(descent), tolerances(rtol, atol),
                 use_inverse);
}

ComposedSolver make_gauss_newton(double rtol, double atol, descents::SolveMode mode) {
  return compose("gauss_newton", InfoPolicy::ResidualJacobian, searches::LearningRate{1.0},
                 descents::NewtonDescent{mode}, tolerances(rtol, atol));
}

ComposedSolver make_levenberg_marquardt(double rtol, double atol, descents::SolveMode mode) {
  return compose("levenberg_marquardt", InfoPolicy::ResidualJacobian, searches::ClassicalTrustRegion{},
                 descents::DampedNewtonDirect{mode}, tolerances(rtol, atol));
}

ComposedSolver make_nonlinear_cg(double rtol, double atol) {
  return compose("nonlinear_cg", InfoPolicy::GradientOnly, searches::BacktrackingArmijo{},
                 descents::NonlinearCGDescent{}, tolerances(rtol, atol));
}

ComposedSolver make_gradient_descent(double rtol, double atol, searches::Search search) {
  return compose("gradient_descent", InfoPolicy::GradientOnly, std::move(search), descents::SteepestDescent{},
                 tolerances(rtol, atol));
}

Vector newton_root_step(const Vector& x, const Vector& fx, const Matrix& jacobian) {
  if (jacobian.rows() != jacobian.cols() || jacobian.cols() != x.size() || fx.size() != x.size())
    throw ConfigurationError("Newton root step needs a square system");
  return x - linalg::PivotedQR(jacobian).solve_square(fx);
}

Vector newton_root_step(const VectorFunction& f, const Vector& x) {
  const Matrix j = f.jacobian ? f.jacobian(x) : fd::jacobian(f.value, x);
  return newton_root_step(x, f.value(x), j);
}

BisectionStep bisection_step(const std::function<double(double)>& f, double lower, double upper) {
  const double f_lo = f(lower);
  const double f_hi = f(upper);
  if (!(f_lo * f_hi < 0.0)) throw ConfigurationError("bisection needs f(lower) and f(upper) of opposite sign");
  BisectionStep out;
  out.midpoint = 0.5 * (lower + upper);
  const double f_mid = f(out.midpoint);
  out.exact = f_mid == 0.0;
  if (out.exact || (f_mid < 0.0) == (f_lo < 0.0)) {
    out.lower = out.midpoint;
    out.upper = upper;
  } else {
    out.lower = lower;
    out.upper = out.midpoint;
  }
  if (out.exact) out.lower = out.upper = out.midpoint;
  return out;
}

Vector fixed_point_step(const VectorFunction& f, const Vector& x) { return f.value(x); }

std::string name(const Solver& solver) {
  return std::visit(overloaded{
                        [](const ComposedSolver& s) { return s.name; },
                        [](const NewtonRootFinder& s) {
                          return std::string(s.mode == JacobianMode::Newton ? "newton" : "chord");
                        },
                        [](const BisectionRootFinder&) { return std::string("bisection"); },
                        [](const FixedPointIteration&) { return std::string("fixed_point_iteration"); },
                    },
                    solver);
}

const TerminationConfig& termination(const Solver& solver) {
  return std::visit([](const auto& s) -> const TerminationConfig& { return s.termination; }, solver);
}

namespace {
Solution finish(Solution sol, const Vector& x, const Vector& fx, Result result) {
  sol.value = x;
  sol.residual = fx;
  sol.fval = max_norm(fx);
  sol.result = result;
  return sol;
}
}  // namespace

Solution run_newton(const VectorFunction& f, const Vector& x0, const NewtonRootFinder& solver) {
  const TerminationConfig& cfg = solver.termination;
  cfg.validate();
  auto jac = [&](const Vector& x) { return f.jacobian ? f.jacobian(x) : fd::jacobian(f.value, x); };
  Solution sol;
  Vector x = x0;
  Vector fx = f.value(x);
  sol.stats.fn_evals = 1;
  if (fx.size() != x.size()) throw ConfigurationError("Newton root finding needs a square system");
  if (!fx.allFinite()) return finish(sol, x, fx, Result::NonFiniteEncountered);
  if (max_norm(fx) == 0.0) return finish(sol, x, fx, Result::Converged);
  if (cfg.max_iters == 0) return finish(sol, x, fx, Result::MaxItersReached);

  try {
    const Matrix frozen = solver.mode == JacobianMode::Chord ? jac(x0) : Matrix();
    if (solver.mode == JacobianMode::Chord) ++sol.stats.grad_evals;
    for (int it = 1; it <= cfg.max_iters; ++it) {
      sol.stats.iterations = it;
      Matrix j;
      if (solver.mode == JacobianMode::Newton) {
        j = jac(x);
        ++sol.stats.grad_evals;
      }
      const Vector x_new = newton_root_step(x, fx, solver.mode == JacobianMode::Chord ? frozen : j);
      const Vector f_new = f.value(x_new);
      ++sol.stats.fn_evals;
      ++sol.stats.accepted_steps;
      if (!x_new.allFinite() || !f_new.allFinite()) return finish(sol, x, fx, Result::NonFiniteEncountered);
      const bool done =
          max_norm(f_new) == 0.0 || cauchy_termination(x, x_new, max_norm(fx), max_norm(f_new), cfg);
      x = x_new;
      fx = f_new;
      if (done) return finish(sol, x, fx, Result::Converged);
    }
  } catch (const LinearSolveError&) {
    return finish(sol, x, fx, Result::LinearSolveFailed);
  }
  return finish(sol, x, fx, Result::MaxItersReached);
}

Solution run_bisection(const std::function<double(double)>& f, const BisectionRootFinder& solver) {
  const TerminationConfig& cfg = solver.termination;
  cfg.validate();
  double lo = solver.lower;
  double hi = solver.upper;
  if (!(lo < hi)) throw ConfigurationError("bisection needs lower < upper");
  Solution sol;
  auto one = [](double v) { return Vector::Constant(1, v); };
  double f_lo = f(lo);
  double f_hi = f(hi);
  sol.stats.fn_evals = 2;
  if (f_lo == 0.0) return finish(sol, one(lo), one(f_lo), Result::Converged);
  if (f_hi == 0.0) return finish(sol, one(hi), one(f_hi), Result::Converged);
  if (!(f_lo * f_hi < 0.0)) throw ConfigurationError("bisection needs f(lower) and f(upper) of opposite sign");

  double mid = 0.5 * (lo + hi);
  double f_mid = f_lo;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    sol.stats.iterations = it;
    mid = 0.5 * (lo + hi);
    f_mid = f(mid);
    ++sol.stats.fn_evals;
    ++sol.stats.accepted_steps;
    if (!std::isfinite(f_mid)) return finish(sol, one(mid), one(f_mid), Result::NonFiniteEncountered);
    if (f_mid == 0.0) return finish(sol, one(mid), one(f_mid), Result::Converged);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo < cfg.atol + cfg.rtol * std::abs(mid) || hi - lo == 0.0)
      return finish(sol, one(mid), one(f_mid), Result::Converged);
  }
  return finish(sol, one(mid), one(f_mid), Result::MaxItersReached);
}

Solution run_fixed_point(const VectorFunction& f, const Vector& x0, const FixedPointIteration& solver) {
  const TerminationConfig& cfg = solver.termination;
  cfg.validate();
  Solution sol;
  Vector x = x0;
  Vector fx = f.value(x);
  sol.stats.fn_evals = 1;
  if (fx.size() != x.size()) throw ConfigurationError("fixed-point map must return a vector of the input size");
  if (!fx.allFinite()) return finish(sol, x, fx - x, Result::NonFiniteEncountered);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    sol.stats.iterations = it;
    const Vector x_new = fx;
    const Vector f_new = f.value(x_new);
    ++sol.stats.fn_evals;
    ++sol.stats.accepted_steps;
    if (!f_new.allFinite()) return finish(sol, x_new, f_new - x_new, Result::NonFiniteEncountered);
    const bool done = cauchy_termination(x, x_new, max_norm(fx - x), max_norm(f_new - x_new), cfg);
    x = x_new;
    fx = f_new;
    if (done) return finish(sol, x, fx - x, Result::Converged);
  }
  return finish(sol, x, fx - x, Result::MaxItersReached);
}

}  // namespace modopt
