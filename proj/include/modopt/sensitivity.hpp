#pragma once

#include <functional>

#include "modopt/core.hpp"

// Derivatives of solutions with respect to problem parameters through the
// implicit function theorem: for F(x*(theta), theta) = 0,
// dx*/dtheta = -(dF/dx)^-1 dF/dtheta.
namespace modopt {

using ParamVectorFn = std::function<Vector(const Vector& x, const Vector& theta)>;
using ParamMatrixFn = std::function<Matrix(const Vector& x, const Vector& theta)>;
using ParamScalarFn = std::function<double(const Vector& x, const Vector& theta)>;

struct ImplicitSystem {
  ParamVectorFn F;
  ParamMatrixFn dFdx;      // may be empty: central differences
  ParamMatrixFn dFdtheta;  // may be empty: central differences
};

struct ImplicitJacobianStats {
  int factorizations = 0;
  int solves = 0;
};

/// dx*/dtheta (N x M) at a solution x_star. Throws LinearSolveError when
/// dF/dx is singular there, i.e. the solution is not isolated.
Matrix implicit_jacobian(const ImplicitSystem& sys, const Vector& x_star, const Vector& theta,
                         ImplicitJacobianStats* stats = nullptr);

/// A problem whose function takes parameters theta alongside x.
struct ParametricProblem {
  ProblemKind kind = ProblemKind::RootFind;
  ParamScalarFn scalar;    // Minimise: f(x, theta)
  ParamVectorFn gradient;  // Minimise: grad_x f, optional
  ParamVectorFn vector;    // LeastSquares residuals, RootFind equations or FixedPoint map
  ParamMatrixFn jacobian;  // d vector / dx, optional
  /// LeastSquares only: difference the full gradient 2 J^T r instead of using
  /// the Gauss-Newton terms 2 J^T J and 2 J^T dr/dtheta.
  bool full_hessian = false;
};

/// The system F whose root is the solution: F = f for root finding, f - x
/// for fixed points, the gradient for minimisation and 2 J^T r for least squares.
ImplicitSystem task_system(const ParametricProblem& problem);

}  // namespace modopt
