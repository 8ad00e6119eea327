#include <doctest.h>

#include <cmath>

#include "modopt/api.hpp"
#include "modopt/bench.hpp"
#include "modopt/sensitivity.hpp"
#include "support/oracles.hpp"

using namespace modopt;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
double scalar_jacobian(const ParametricProblem& p, double x, double theta) {
  const Matrix j = implicit_jacobian(task_system(p), vec({x}), vec({theta}));
  REQUIRE(j.rows() == 1);
  REQUIRE(j.cols() == 1);
  return j(0, 0);
}
}  // namespace

TEST_CASE("identity root gives the identity jacobian") {
  ImplicitSystem sys;
  sys.F = [](const Vector& x, const Vector& theta) -> Vector { return x - theta; };
  sys.dFdx = [](const Vector& x, const Vector&) -> Matrix { return Matrix::Identity(x.size(), x.size()); };
  sys.dFdtheta = [](const Vector& x, const Vector&) -> Matrix { return -Matrix::Identity(x.size(), x.size()); };
  ImplicitJacobianStats stats;
  const Matrix j = implicit_jacobian(sys, vec({1, 2, 3}), vec({1, 2, 3}), &stats);
  CHECK(j == Matrix::Identity(3, 3));
  CHECK(stats.factorizations == 1);
  CHECK(stats.solves == 3);

  // Finite-difference derivatives give the same answer.
  ImplicitSystem fd_sys{sys.F, {}, {}};
  CHECK((implicit_jacobian(fd_sys, vec({1, 2, 3}), vec({1, 2, 3})) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <=
        1e-8);
}

TEST_CASE("scalar examples") {
  ParametricProblem square;
  square.kind = ProblemKind::RootFind;
  square.vector = [](const Vector& x, const Vector& t) { return vec({x[0] - t[0] * t[0]}); };
  CHECK(scalar_jacobian(square, 9.0, 3.0) == doctest::Approx(6.0).epsilon(1e-8));

  ParametricProblem cube;
  cube.kind = ProblemKind::RootFind;
  cube.vector = [](const Vector& x, const Vector& t) { return vec({x[0] * x[0] * x[0] - t[0]}); };
  CHECK(scalar_jacobian(cube, 2.0, 8.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-8));

  // x* = 1 / (1 - theta) for x = theta x + 1: dx*/dtheta = 1 / (1 - theta)^2 = 4 at theta = 0.5.
  ParametricProblem affine;
  affine.kind = ProblemKind::FixedPoint;
  affine.vector = [](const Vector& x, const Vector& t) { return vec({t[0] * x[0] + 1.0}); };
  CHECK(scalar_jacobian(affine, 2.0, 0.5) == doctest::Approx(4.0).epsilon(1e-8));

  ParametricProblem bowl;
  bowl.kind = ProblemKind::Minimise;
  bowl.scalar = [](const Vector& x, const Vector& t) { return 0.5 * std::pow(x[0] - t[0], 2); };
  CHECK(scalar_jacobian(bowl, 1.5, 1.5) == doctest::Approx(1.0).epsilon(1e-5));
  bowl.gradient = [](const Vector& x, const Vector& t) { return vec({x[0] - t[0]}); };
  CHECK(scalar_jacobian(bowl, 1.5, 1.5) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("linear least squares sensitivity to the targets") {
  // r = A x - b: x* = A^+ b, so dx*/db = (A^T A)^-1 A^T.
  oracle::Rng rng(11);
  const Matrix a = oracle::random_matrix(rng, 6, 2);
  ParametricProblem p;
  p.kind = ProblemKind::LeastSquares;
  p.vector = [a](const Vector& x, const Vector& b) -> Vector { return a * x - b; };
  p.jacobian = [a](const Vector&, const Vector&) -> Matrix { return a; };
  const Vector b = oracle::random_vector(rng, 6);
  const Vector x_star = oracle::lstsq(a, b);
  const Matrix expected = oracle::inverse(a.transpose() * a) * a.transpose();
  const Matrix j = implicit_jacobian(task_system(p), x_star, b);
  CHECK((j - expected).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("singular dF/dx at a non-isolated solution") {
  ImplicitSystem sys;
  sys.F = [](const Vector& x, const Vector& t) { return vec({x[0] + x[1] - t[0], 2.0 * (x[0] + x[1] - t[0])}); };
  CHECK_THROWS_AS(implicit_jacobian(sys, vec({0.5, 0.5}), vec({1.0})), LinearSolveError);
}

TEST_CASE("parametric corpus jacobians match re-solving") {
  for (const auto& entry : bench::parametric_corpus()) {
    INFO(entry.name);
    const ImplicitSystem sys = task_system(entry.problem);
    const auto solve = [&](const Vector& theta) -> Vector {
      const auto F = [&](const Vector& x) { return sys.F(x, theta); };
      return oracle::newton_solve(F, [&](const Vector& x) { return fd::jacobian(F, x); }, entry.x0, 1e-12);
    };
    const Vector x_star = solve(entry.theta);
    const Matrix j = implicit_jacobian(sys, x_star, entry.theta);
    const Matrix reference = oracle::resolve_jacobian(solve, entry.theta);
    CHECK((j - reference).cwiseAbs().maxCoeff() <= std::max(1e-5, 1e-3 * reference.cwiseAbs().maxCoeff()));
  }
}
