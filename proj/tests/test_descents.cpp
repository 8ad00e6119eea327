#include <doctest.h>

#include "modopt/descents.hpp"
#include "support/oracles.hpp"

using namespace modopt;
using namespace modopt::descents;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
FnInfo quad(const Matrix& h, const Vector& g) {
  FnInfo info;
  info.value = 0.0;
  info.grad = g;
  info.hessian = HessianApprox{h, HessianForm::Direct};
  return info;
}
FnInfo resid(const Matrix& j, const Vector& r) {
  FnInfo info;
  info.value = r.squaredNorm();
  info.residual = r;
  info.jacobian = j;
  info.grad = 2.0 * j.transpose() * r;
  return info;
}
Matrix diag(std::initializer_list<double> xs) { return vec(xs).asDiagonal(); }
bool close(const Vector& a, const Vector& b, double tol = 1e-12) { return (a - b).cwiseAbs().maxCoeff() <= tol; }
}  // namespace

TEST_CASE("steepest descent") {
  const FnInfo info = quad(Matrix::Identity(2, 2), vec({1, -2}));
  CHECK(close(steepest(0.1, info), vec({-0.1, 0.2})));
  CHECK(steepest(0.0, info).isZero(0.0));
  CHECK(steepest(3.0, quad(Matrix::Identity(2, 2), vec({0, 0}))).isZero(0.0));
}

TEST_CASE("newton descent and its cache") {
  DescentCache cache;
  CHECK(close(newton_descent(1.0, quad(Matrix::Identity(2, 2), vec({2, 4})), cache), vec({-2, -4})));

  DescentCache c2;
  const FnInfo info = quad(diag({2, 8}), vec({2, 8}));
  CHECK(close(newton_descent(0.5, info, c2), vec({-0.5, -0.5})));
  CHECK(close(newton_descent(1.0, info, c2), vec({-1, -1})));
  CHECK(close(newton_descent(0.1, info, c2), vec({-0.1, -0.1})));
  CHECK(c2.linear_solves == 1);
  c2.invalidate();
  CHECK_FALSE(c2.newton_point.has_value());

  // Residual model: -J^+ r.
  DescentCache c3;
  Matrix j(3, 1);
  j << 1, 1, 1;
  CHECK(close(newton_descent(1.0, resid(j, vec({1, 2, 3})), c3), vec({-2})));

  // Inverse-form approximation multiplies instead of solving.
  FnInfo inv = quad(diag({0.5, 0.125}), vec({2, 8}));
  inv.hessian->form = HessianForm::Inverse;
  DescentCache c4;
  CHECK(close(newton_descent(1.0, inv, c4), vec({-1, -1})));
}

TEST_CASE("damped newton direct") {
  const FnInfo info = resid(Matrix::Identity(2, 2), vec({1, 1}));
  for (auto mode : {SolveMode::NormalEquations, SolveMode::AugmentedLstsq, SolveMode::NormalEquationsCG})
    CHECK(close(damped_newton_direct(1.0, info, mode), vec({-0.5, -0.5}), 1e-10));

  oracle::Rng rng(21);
  const Matrix j = oracle::random_matrix(rng, 5, 3);
  const Vector r = oracle::random_vector(rng, 5);
  const FnInfo ls = resid(j, r);
  const Vector gauss_newton = -oracle::lstsq(j, r);
  CHECK(close(damped_newton_direct(1e12, ls, SolveMode::AugmentedLstsq), gauss_newton, 1e-6));
  const Vector lm1 = damped_newton_direct(0.7, ls, SolveMode::NormalEquations);
  const Vector lm2 = damped_newton_direct(0.7, ls, SolveMode::AugmentedLstsq);
  CHECK((lm1 - lm2).cwiseAbs().maxCoeff() <= 1e-6 * lm2.cwiseAbs().maxCoeff());

  // Hessian models solve (H + lambda I) p = -g.
  CHECK(close(damped_newton_direct(1.0, quad(diag({1, 3}), vec({2, 4})), SolveMode::NormalEquations),
              vec({-1, -1})));
  CHECK_THROWS_AS(damped_newton_direct(0.0, info, SolveMode::AugmentedLstsq), ConfigurationError);
}

TEST_CASE("damped newton indirect") {
  const FnInfo info = quad(Matrix::Identity(2, 2), vec({3, 4}));
  DescentCache c1;
  CHECK(close(damped_newton_indirect(10.0, info, Norm::two(), c1), vec({-3, -4})));
  DescentCache c2;
  const Vector p = damped_newton_indirect(1.0, info, Norm::two(), c2);
  CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(close(p / p.norm(), vec({-0.6, -0.8}), 1e-9));
  DescentCache c3;
  CHECK(damped_newton_indirect(1.0, quad(Matrix::Identity(2, 2), vec({0, 0})), Norm::two(), c3).isZero(0.0));

  // Indefinite model: the step sits on the boundary.
  DescentCache c4;
  const Vector q = damped_newton_indirect(0.5, quad(diag({1, -2}), vec({1, 1})), Norm::two(), c4);
  CHECK(q.norm() == doctest::Approx(0.5).epsilon(1e-3));

  // Custom norm.
  DescentCache c5;
  const Vector m = damped_newton_indirect(0.5, info, Norm::max(), c5);
  CHECK(max_norm(m) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("dogleg") {
  DescentCache c1;
  const FnInfo id = quad(Matrix::Identity(2, 2), vec({3, 4}));
  CHECK(close(dogleg(100.0, id, Norm::two(), c1), vec({-3, -4})));
  DescentCache c2;
  CHECK(close(dogleg(1.0, quad(Matrix::Identity(2, 2), vec({4, 0})), Norm::two(), c2), vec({-1, 0})));

  // H = diag(1, 4), g = (1, 1): Cauchy point -(2/5)(1, 1), Newton point (-1, -0.25).
  const FnInfo info = quad(diag({1, 4}), vec({1, 1}));
  DescentCache c3;
  const double radius = 0.75;
  const Vector p = dogleg(radius, info, Norm::two(), c3);
  CHECK(close(*c3.cauchy_point, vec({-0.4, -0.4})));
  CHECK(close(*c3.newton_point, vec({-1, -0.25})));
  CHECK(p.norm() == doctest::Approx(radius).epsilon(1e-12));
  // p lies on the segment from the Cauchy point to the Newton point.
  const Vector d = vec({-0.6, 0.15});
  const double tau = (p - *c3.cauchy_point).dot(d) / d.squaredNorm();
  CHECK(tau > 0.0);
  CHECK(tau < 1.0);
  CHECK(close(*c3.cauchy_point + tau * d, p, 1e-12));

  DescentCache c4;
  const Vector l1 = dogleg(radius, info, Norm::custom([](const Vector& v) { return v.lpNorm<1>(); }), c4);
  CHECK(l1.lpNorm<1>() == doctest::Approx(radius).epsilon(1e-3));

  // Negative curvature along g: scaled steepest descent.
  DescentCache c5;
  CHECK(close(dogleg(2.0, quad(diag({-1, -1}), vec({3, 4})), Norm::two(), c5), vec({-1.2, -1.6})));
}

TEST_CASE("nonlinear conjugate gradient") {
  DescentCache cache;
  const FnInfo first = quad(Matrix::Identity(2, 2), vec({1, 0}));
  CHECK(close(nonlinear_cg(1.0, first, cache), vec({-1, 0})));
  cache.invalidate();
  // Same gradient again: beta = 0, pure steepest descent.
  CHECK(close(nonlinear_cg(2.0, first, cache), vec({-2, 0})));
}

TEST_CASE("nonlinear CG with exact line search terminates on a quadratic") {
  const Matrix a = diag({1, 4});
  Vector x = vec({3, -1});
  DescentCache cache;
  int iterations = 0;
  for (; iterations < 2; ++iterations) {
    const Vector g = a * x;
    if (max_norm(g) <= 1e-8) break;
    const FnInfo info = quad(a, g);
    const Vector d = nonlinear_cg(1.0, info, cache);
    x += (-g.dot(d) / d.dot(a * d)) * d;
    cache.invalidate();
  }
  CHECK(iterations <= 2);
  CHECK(max_norm(a * x) <= 1e-8);
}

TEST_CASE("descent objects") {
  CHECK(name(Descent{DoglegDescent{}}) == "dogleg");
  CHECK(needs_quadratic_model(Descent{NewtonDescent{}}));
  CHECK_FALSE(needs_quadratic_model(Descent{SteepestDescent{}}));
  CHECK_FALSE(needs_quadratic_model(Descent{NonlinearCGDescent{}}));
  CHECK(needs_residual_model(Descent{DampedNewtonDirect{SolveMode::AugmentedLstsq}}));
  CHECK_FALSE(needs_residual_model(Descent{DampedNewtonDirect{SolveMode::NormalEquations}}));
  CHECK(manages_direction(Descent{NonlinearCGDescent{}}));
  CHECK(alpha_is_radius(Descent{DampedNewtonIndirect{}}));
  CHECK_FALSE(alpha_is_radius(Descent{DampedNewtonDirect{}}));
  CHECK(to_string(SolveMode::AugmentedLstsq) != to_string(SolveMode::NormalEquations));
}
