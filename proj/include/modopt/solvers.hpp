#pragma once

#include <functional>
#include <string>
#include <variant>

#include "modopt/core.hpp"
#include "modopt/descents.hpp"
#include "modopt/objective.hpp"
#include "modopt/searches.hpp"

namespace modopt {

/// How FnInfo is produced at each accepted iterate.
enum class InfoPolicy {
  GradientOnly,      // value and gradient
  Bfgs,              // value, gradient and a BFGS approximation of H or H^-1
  ResidualJacobian,  // value, gradient, residual and Jacobian (residual objectives only)
  TrueHessian,       // value, gradient and a finite-difference Hessian of the gradient
};

std::string to_string(InfoPolicy policy);

/// An optimiser assembled from an information policy, a search and a descent.
///
/// Construct through `compose` (or the make_* helpers) so incompatible
/// combinations are rejected up front.
struct ComposedSolver {
  std::string name;
  InfoPolicy policy = InfoPolicy::GradientOnly;
  bool use_inverse = false;  // Bfgs only: maintain H^-1 instead of H
  searches::Search search;
  descents::Descent descent;
  TerminationConfig termination;

  /// Throws ConfigurationError when the descent or search needs fields the
  /// policy does not produce.
  void validate() const;

  bool needs_residuals() const;
};

ComposedSolver compose(std::string name, InfoPolicy policy, searches::Search search, descents::Descent descent,
                       TerminationConfig termination, bool use_inverse = false);

/// Identity start for a BFGS approximation.
HessianApprox bfgs_initial(Index n, bool use_inverse);

/// BFGS update of B (direct form) or B^-1 (inverse form) with step s and
/// gradient difference y; skipped when y^T s <= 1e-10 |s| |y|.
HessianApprox bfgs_update(const HessianApprox& approx, const Vector& s, const Vector& y);

ComposedSolver make_bfgs(double rtol = 1e-5, double atol = 1e-6, bool use_inverse = false,
                         searches::Search search = searches::BacktrackingArmijo{},
                         descents::Descent descent = descents::NewtonDescent{});

ComposedSolver make_gauss_newton(double rtol = 1e-5, double atol = 1e-6,
                                 descents::SolveMode mode = descents::SolveMode::AugmentedLstsq);

ComposedSolver make_levenberg_marquardt(double rtol = 1e-5, double atol = 1e-6,
                                        descents::SolveMode mode = descents::SolveMode::AugmentedLstsq);

ComposedSolver make_nonlinear_cg(double rtol = 1e-5, double atol = 1e-6);

ComposedSolver make_gradient_descent(double rtol = 1e-5, double atol = 1e-6,
                                     searches::Search search = searches::BacktrackingArmijo{});

// Classical root-find and fixed-point steppers.

/// x - J^-1 f(x) for a square system; throws LinearSolveError when J is singular.
Vector newton_root_step(const Vector& x, const Vector& fx, const Matrix& jacobian);
Vector newton_root_step(const VectorFunction& f, const Vector& x);

struct BisectionStep {
  double lower = 0.0;
  double upper = 0.0;
  double midpoint = 0.0;
  bool exact = false;  // f(midpoint) == 0
};

/// Halves a bracketing interval; throws ConfigurationError without a sign change.
BisectionStep bisection_step(const std::function<double(double)>& f, double lower, double upper);

Vector fixed_point_step(const VectorFunction& f, const Vector& x);

enum class JacobianMode { Newton, Chord };

/// Newton (or chord, with the Jacobian frozen at x0) iteration on F(x) = 0.
struct NewtonRootFinder {
  TerminationConfig termination;
  JacobianMode mode = JacobianMode::Newton;
};

/// Bisection of a 1-D bracket [lower, upper].
struct BisectionRootFinder {
  double lower = 0.0;
  double upper = 0.0;
  TerminationConfig termination;
};

/// x <- f(x).
struct FixedPointIteration {
  TerminationConfig termination;
};

using Solver = std::variant<ComposedSolver, NewtonRootFinder, BisectionRootFinder, FixedPointIteration>;

std::string name(const Solver& solver);
const TerminationConfig& termination(const Solver& solver);

/// Runs Newton or chord on F(x) = 0. Convergence uses the Cauchy test with the
/// objective replaced by max-norm(F).
Solution run_newton(const VectorFunction& f, const Vector& x0, const NewtonRootFinder& solver);

/// Runs bisection on a 1-D F; converged when the bracket is narrower than
/// atol + rtol |midpoint| or F(midpoint) is exactly zero.
Solution run_bisection(const std::function<double(double)>& f, const BisectionRootFinder& solver);

/// Runs x <- f(x); the Cauchy test uses max-norm(f(x) - x) as the objective.
Solution run_fixed_point(const VectorFunction& f, const Vector& x0, const FixedPointIteration& solver);

}  // namespace modopt
