#pragma once

#include <optional>
#include <string>
#include <variant>

#include "modopt/core.hpp"

// Descents map the search scalar alpha and the local information to the
// update vector. Depending on the descent alpha is a step scale (steepest,
// Newton, nonlinear CG), a trust-region radius (dogleg, indirect damped
// Newton) or an inverse damping (direct damped Newton, lambda = 1 / alpha).
namespace modopt::descents {

/// How residual-model linear systems are solved.
enum class SolveMode {
  NormalEquations,    // Cholesky on J^T J (+ lambda I); squares the condition number
  AugmentedLstsq,     // pivoted QR on J or [J; sqrt(lambda) I]
  NormalEquationsCG,  // conjugate gradients on the normal equations
};

std::string to_string(SolveMode mode);

/// Eigendecomposition of the model Hessian with the gradient in its basis.
struct SpectralFactorization {
  Vector eigenvalues;
  Matrix eigenvectors;
  Vector projected_grad;  // V^T g
};

/// Per-iterate values reused while alpha varies.
///
/// `invalidate` must be called on every accepted step; it keeps only the
/// history nonlinear CG needs.
struct DescentCache {
  std::optional<Vector> newton_point;
  std::optional<Vector> cauchy_point;
  std::optional<SpectralFactorization> factorization;
  std::optional<Vector> direction;       // nonlinear CG direction at this iterate
  std::optional<Vector> direction_grad;  // gradient that direction was built from
  std::optional<Vector> prev_grad;
  std::optional<Vector> prev_direction;
  int linear_solves = 0;

  void invalidate();
};

/// -alpha grad.
Vector steepest(double alpha, const FnInfo& info);

/// -alpha H^-1 g (or -alpha J^+ r for residual models); the solve is cached.
Vector newton_descent(double alpha, const FnInfo& info, DescentCache& cache,
                      SolveMode mode = SolveMode::AugmentedLstsq);

/// Levenberg-Marquardt step with lambda = 1 / alpha.
///
/// Residual models solve (J^T J + lambda I) p = -J^T r, either through the
/// normal equations or as the augmented least-squares problem
/// min |[J; sqrt(lambda) I] p + [r; 0]|. Hessian models solve (H + lambda I) p = -g.
Vector damped_newton_direct(double alpha, const FnInfo& info, SolveMode mode);

/// Trust-region subproblem solved through the damping parameter: the Newton
/// step when it fits in the radius, otherwise p(lambda) = -(H + lambda I)^-1 g
/// with norm(p) = radius to within 1e-3 relative.
Vector damped_newton_indirect(double radius, const FnInfo& info, const Norm& norm, DescentCache& cache);

/// Dogleg path from the origin through the Cauchy point to the Newton point,
/// cut at the trust-region boundary.
Vector dogleg(double radius, const FnInfo& info, const Norm& norm, DescentCache& cache);

/// Polak-Ribiere-plus nonlinear conjugate gradient direction, scaled by alpha.
Vector nonlinear_cg(double alpha, const FnInfo& info, DescentCache& cache);

// Configured descent objects, composed into solvers.

struct SteepestDescent {};

struct NewtonDescent {
  SolveMode mode = SolveMode::AugmentedLstsq;
};

struct DampedNewtonDirect {
  SolveMode mode = SolveMode::AugmentedLstsq;
};

struct DampedNewtonIndirect {
  Norm norm = Norm::two();
};

struct DoglegDescent {
  Norm norm = Norm::two();
};

struct NonlinearCGDescent {};

using Descent = std::variant<SteepestDescent, NewtonDescent, DampedNewtonDirect, DampedNewtonIndirect,
                             DoglegDescent, NonlinearCGDescent>;

std::string name(const Descent& descent);

/// Needs a Hessian approximation or a residual Jacobian.
bool needs_quadratic_model(const Descent& descent);

/// Needs the residual Jacobian itself (augmented least-squares solves).
bool needs_residual_model(const Descent& descent);

/// Maintains its own search direction across iterates.
bool manages_direction(const Descent& descent);

/// alpha is a trust-region radius rather than a step scale.
bool alpha_is_radius(const Descent& descent);

Vector step(const Descent& descent, double alpha, const FnInfo& info, DescentCache& cache);

}  // namespace modopt::descents
