#include "modopt/descents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "modopt/linalg.hpp"
#include "modopt/overloaded.hpp"

namespace modopt::descents {

std::string to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::NormalEquations:
      return "normal_equations";
    case SolveMode::AugmentedLstsq:
      return "augmented_lstsq";
    case SolveMode::NormalEquationsCG:
      return "normal_equations_cg";
  }
  return "unknown";
}

void DescentCache::invalidate() {
  if (direction && direction_grad) {
    prev_direction = std::move(direction);
    prev_grad = std::move(direction_grad);
  }
  direction.reset();
  direction_grad.reset();
  newton_point.reset();
  cauchy_point.reset();
  factorization.reset();
}

namespace {

const Vector& require_grad(const FnInfo& info) {
  if (!info.grad) throw ConfigurationError("descent requires a gradient");
  return *info.grad;
}

int cg_budget(Index n) { return static_cast<int>(std::max<Index>(50, 10 * n)); }
constexpr double kCgTolerance = 1e-12;

Vector checked(Vector p) {
  if (!p.allFinite()) throw LinearSolveError("linear solve produced non-finite values");
  return p;
}

// Solves H p = -g for the quadratic model in `info`.
Vector compute_newton_point(const FnInfo& info, SolveMode mode) {
  const Vector& g = require_grad(info);
  if (info.hessian) {
    const HessianApprox& h = *info.hessian;
    if (h.form == HessianForm::Inverse) return checked(-(h.matrix * g));
    if (mode == SolveMode::NormalEquationsCG)
      return checked(-linalg::solve_cg(h.matrix, g, kCgTolerance, cg_budget(g.size())).x);
    return checked(-linalg::solve_cholesky(h.matrix, g));
  }
  if (!info.has_residual_model()) throw ConfigurationError("Newton descent requires a Hessian or a residual Jacobian");
  const Matrix& j = *info.jacobian;
  const Vector& r = *info.residual;
  switch (mode) {
    case SolveMode::AugmentedLstsq:
      return checked(-linalg::solve_lstsq(j, r));
    case SolveMode::NormalEquations:
      return checked(-linalg::solve_cholesky(linalg::gram(j), linalg::transpose_times(j, r)));
    case SolveMode::NormalEquationsCG:
      return checked(-linalg::solve_cg(linalg::gram(j), linalg::transpose_times(j, r), kCgTolerance,
                                       cg_budget(j.cols()))
                          .x);
  }
  throw ConfigurationError("unknown solve mode");
}

const Vector& newton_point(const FnInfo& info, DescentCache& cache, SolveMode mode) {
  if (!cache.newton_point) {
    cache.newton_point = compute_newton_point(info, mode);
    ++cache.linear_solves;
  }
  return *cache.newton_point;
}

const SpectralFactorization& spectral(const FnInfo& info, DescentCache& cache) {
  if (!cache.factorization) {
    const Matrix h = info.hessian_matrix();
    if (!h.allFinite()) throw LinearSolveError("non-finite Hessian");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    if (eig.info() != Eigen::Success) throw LinearSolveError("eigendecomposition failed");
    SpectralFactorization f;
    f.eigenvalues = eig.eigenvalues();
    f.eigenvectors = eig.eigenvectors();
    f.projected_grad = f.eigenvectors.transpose() * require_grad(info);
    cache.factorization = std::move(f);
    ++cache.linear_solves;
  }
  return *cache.factorization;
}

Vector damped_point(const SpectralFactorization& f, double lambda) {
  const Vector coeff = (f.projected_grad.array() / (f.eigenvalues.array() + lambda)).matrix();
  return -(f.eigenvectors * coeff);
}

}  // namespace

Vector steepest(double alpha, const FnInfo& info) { return -alpha * require_grad(info); }

Vector newton_descent(double alpha, const FnInfo& info, DescentCache& cache, SolveMode mode) {
  return alpha * newton_point(info, cache, mode);
}

Vector damped_newton_direct(double alpha, const FnInfo& info, SolveMode mode) {
  if (!(alpha > 0.0)) throw ConfigurationError("damped Newton needs a positive alpha");
  const double lambda = 1.0 / alpha;
  const Vector& g = require_grad(info);
  const Index n = g.size();
  if (info.hessian) {
    const Matrix h = info.hessian_matrix();
    const Matrix damped = h + lambda * Matrix::Identity(n, n);
    if (mode == SolveMode::NormalEquationsCG)
      return checked(-linalg::solve_cg(damped, g, kCgTolerance, cg_budget(n)).x);
    return checked(-linalg::solve_cholesky(damped, g));
  }
  if (!info.has_residual_model())
    throw ConfigurationError("damped Newton requires a Hessian or a residual Jacobian");
  const Matrix& j = *info.jacobian;
  const Vector& r = *info.residual;
  switch (mode) {
    case SolveMode::AugmentedLstsq: {
      const Index m = j.rows();
      Matrix aug = Matrix::Zero(m + n, n);
      aug.topRows(m) = j;
      aug.bottomRows(n).diagonal().setConstant(std::sqrt(lambda));
      Vector rhs = Vector::Zero(m + n);
      rhs.head(m) = -r;
      return checked(linalg::solve_lstsq(aug, rhs));
    }
    case SolveMode::NormalEquations: {
      Matrix normal = linalg::gram(j);
      normal.diagonal().array() += lambda;
      return checked(-linalg::solve_cholesky(normal, linalg::transpose_times(j, r)));
    }
    case SolveMode::NormalEquationsCG: {
      Matrix normal = linalg::gram(j);
      normal.diagonal().array() += lambda;
      return checked(-linalg::solve_cg(normal, linalg::transpose_times(j, r), kCgTolerance, cg_budget(n)).x);
    }
  }
  throw ConfigurationError("unknown solve mode");
}

Vector damped_newton_indirect(double radius, const FnInfo& info, const Norm& norm, DescentCache& cache) {
  if (!(radius > 0.0)) throw ConfigurationError("trust-region radius must be positive");
  const Vector& g = require_grad(info);
  if (g.isZero(0.0)) return Vector::Zero(g.size());
  const SpectralFactorization& f = spectral(info, cache);

  const double mu_min = f.eigenvalues.minCoeff();
  const double mu_scale = std::max(1.0, f.eigenvalues.cwiseAbs().maxCoeff());
  if (mu_min > 1e-12 * mu_scale) {
    if (!cache.newton_point) cache.newton_point = damped_point(f, 0.0);
    if (norm(*cache.newton_point) <= radius) return *cache.newton_point;
  }

  // phi(lambda) = 1/norm(p) - 1/radius increases with lambda.
  auto phi = [&](double lambda) {
    const double len = norm(damped_point(f, lambda));
    return 1.0 / len - 1.0 / radius;
  };
  double lo = std::max(0.0, -mu_min);
  if (mu_min <= 1e-12 * mu_scale) lo += 1e-12 * mu_scale;
  double phi_lo = phi(lo);
  if (phi_lo >= 0.0) return damped_point(f, lo);  // g has no component along the flattest directions

  double hi = lo + g.norm() / radius;
  double phi_hi = phi(hi);
  for (int k = 0; k < 200 && phi_hi < 0.0; ++k) {
    lo = hi;
    phi_lo = phi_hi;
    hi = 2.0 * hi + 1e-12 * mu_scale;
    phi_hi = phi(hi);
  }
  if (phi_hi < 0.0) throw RootFindStalled("damping parameter could not be bracketed");

  // Illinois regula falsi, refined well past the 1e-3 acceptance band so the
  // step length varies smoothly with the radius.
  constexpr int kMaxIters = 100;
  int side = 0;
  double lambda = hi;
  for (int it = 0; it < kMaxIters; ++it) {
    lambda = (lo * phi_hi - hi * phi_lo) / (phi_hi - phi_lo);
    if (!(lambda > lo && lambda < hi)) lambda = 0.5 * (lo + hi);
    const double len = norm(damped_point(f, lambda));
    const double value = 1.0 / len - 1.0 / radius;
    if (std::abs(len - radius) <= 1e-12 * radius || hi - lo <= 1e-15 * hi) return damped_point(f, lambda);
    if (value < 0.0) {
      lo = lambda;
      phi_lo = value;
      if (side == -1) phi_hi *= 0.5;
      side = -1;
    } else {
      hi = lambda;
      phi_hi = value;
      if (side == 1) phi_lo *= 0.5;
      side = 1;
    }
  }
  const Vector p = damped_point(f, lambda);
  if (std::abs(norm(p) - radius) <= 1e-3 * radius) return p;
  throw RootFindStalled("damping parameter root find did not converge");
}

Vector dogleg(double radius, const FnInfo& info, const Norm& norm, DescentCache& cache) {
  if (!(radius > 0.0)) throw ConfigurationError("trust-region radius must be positive");
  const Vector& g = require_grad(info);
  if (g.isZero(0.0)) return Vector::Zero(g.size());

  if (!cache.cauchy_point) {
    const double curvature = g.dot(info.hessian_times(g));
    // Non-positive curvature along g leaves only the scaled gradient.
    cache.cauchy_point = curvature > 0.0 ? Vector(-(g.squaredNorm() / curvature) * g)
                                         : Vector(-g * std::numeric_limits<double>::infinity());
  }
  const Vector& cauchy = *cache.cauchy_point;
  if (!cauchy.allFinite()) return -(radius / norm(g)) * g;

  std::optional<Vector> newton;
  try {
    newton = newton_point(info, cache, SolveMode::AugmentedLstsq);
  } catch (const LinearSolveError&) {
    // indefinite model: no Newton point, stay on the Cauchy segment
  }

  if (newton && norm(*newton) <= radius) return *newton;
  const double cauchy_len = norm(cauchy);
  if (!newton || cauchy_len >= radius) return (std::min(1.0, radius / cauchy_len)) * cauchy;

  const Vector d = *newton - cauchy;
  double tau;
  if (norm.is_euclidean()) {
    const double a = d.squaredNorm();
    const double b = 2.0 * cauchy.dot(d);
    const double c = cauchy.squaredNorm() - radius * radius;
    const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
    // c < 0, so the positive root; pick the cancellation-free form.
    tau = b > 0.0 ? (-2.0 * c) / (b + disc) : (-b + disc) / (2.0 * a);
  } else {
    double lo = 0.0;
    double hi = 1.0;
    tau = 0.5;
    for (int it = 0; it < 200; ++it) {
      tau = 0.5 * (lo + hi);
      const double len = norm(cauchy + tau * d);
      if (std::abs(len - radius) <= 1e-3 * radius) break;
      (len < radius ? lo : hi) = tau;
    }
  }
  return cauchy + std::clamp(tau, 0.0, 1.0) * d;
}

Vector nonlinear_cg(double alpha, const FnInfo& info, DescentCache& cache) {
  if (!cache.direction) {
    const Vector& g = require_grad(info);
    Vector d = -g;
    if (cache.prev_grad && cache.prev_direction && cache.prev_grad->size() == g.size()) {
      const double denom = cache.prev_grad->squaredNorm();
      const double beta = denom > 0.0 ? std::max(0.0, g.dot(g - *cache.prev_grad) / denom) : 0.0;
      d += beta * *cache.prev_direction;
      if (!(g.dot(d) < 0.0)) d = -g;  // restart when not a descent direction
    }
    cache.direction = std::move(d);
    cache.direction_grad = g;
  }
  return alpha * *cache.direction;
}

std::string name(const Descent& descent) {
  return std::visit(overloaded{
                        [](const SteepestDescent&) { return std::string("steepest"); },
                        [](const NewtonDescent&) { return std::string("newton"); },
                        [](const DampedNewtonDirect&) { return std::string("damped_newton_direct"); },
                        [](const DampedNewtonIndirect&) { return std::string("damped_newton_indirect"); },
                        [](const DoglegDescent&) { return std::string("dogleg"); },
                        [](const NonlinearCGDescent&) { return std::string("nonlinear_cg"); },
                    },
                    descent);
}

bool needs_quadratic_model(const Descent& descent) {
  return !std::holds_alternative<SteepestDescent>(descent) && !std::holds_alternative<NonlinearCGDescent>(descent);
}

bool needs_residual_model(const Descent& descent) {
  if (const auto* d = std::get_if<DampedNewtonDirect>(&descent)) return d->mode == SolveMode::AugmentedLstsq;
  return false;
}

bool manages_direction(const Descent& descent) { return std::holds_alternative<NonlinearCGDescent>(descent); }

bool alpha_is_radius(const Descent& descent) {
  return std::holds_alternative<DoglegDescent>(descent) || std::holds_alternative<DampedNewtonIndirect>(descent);
}

Vector step(const Descent& descent, double alpha, const FnInfo& info, DescentCache& cache) {
  return std::visit(overloaded{
                        [&](const SteepestDescent&) { return steepest(alpha, info); },
                        [&](const NewtonDescent& d) { return newton_descent(alpha, info, cache, d.mode); },
                        [&](const DampedNewtonDirect& d) {
                          ++cache.linear_solves;
                          return damped_newton_direct(alpha, info, d.mode);
                        },
                        [&](const DampedNewtonIndirect& d) {
                          return damped_newton_indirect(alpha, info, d.norm, cache);
                        },
                        [&](const DoglegDescent& d) { return dogleg(alpha, info, d.norm, cache); },
                        [&](const NonlinearCGDescent&) { return nonlinear_cg(alpha, info, cache); },
                    },
                    descent);
}

}  // namespace modopt::descents
