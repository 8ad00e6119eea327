#include <doctest.h>

#include <cmath>

#include "modopt/driver.hpp"
#include "modopt/objective.hpp"

using namespace modopt;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
ScalarFunction sum_squares(int* calls = nullptr) {
  return {[calls](const Vector& x) {
            if (calls) ++*calls;
            return x.squaredNorm();
          },
          [](const Vector& x) -> Vector { return 2.0 * x; }};
}
}  // namespace

TEST_CASE("newton with unit learning rate solves a quadratic bowl at once") {
  const auto solver = compose("newton_lr", InfoPolicy::TrueHessian, searches::LearningRate{1.0},
                              descents::NewtonDescent{}, TerminationConfig{});
  DriverTrace trace;
  trace.record_iterates = true;
  const Solution sol = iterate(Objective::scalar(sum_squares()), solver, vec({2, 3}), &trace);
  REQUIRE(sol.converged());
  CHECK(sol.stats.accepted_steps <= 2);
  CHECK(max_norm(sol.value) <= 1e-6);
  REQUIRE(trace.accepted_iterates.size() >= 2);
  CHECK(trace.accepted_iterates.front() == vec({2, 3}));
  CHECK(max_norm(trace.accepted_iterates[1]) <= 1e-6);
}

TEST_CASE("gradient descent with a large initial Armijo step") {
  int calls = 0;
  const auto solver = make_gradient_descent(1e-8, 1e-10, searches::BacktrackingArmijo{0.5, 1e-4, 10.0});
  const Solution sol = iterate(Objective::scalar(sum_squares(&calls)), solver, vec({1.0}));
  REQUIRE(sol.converged());
  CHECK(std::abs(sol.value[0]) <= 1e-6);
  CHECK(sol.stats.rejected_steps > 0);
  CHECK(sol.stats.fn_evals == calls);
  CHECK(sol.stats.fn_evals == sol.stats.accepted_steps + sol.stats.rejected_steps + 1);
}

TEST_CASE("zero iteration budget returns the start") {
  TerminationConfig cfg;
  cfg.max_iters = 0;
  int calls = 0;
  const Solution sol = iterate(Objective::scalar(sum_squares(&calls)), make_bfgs(), vec({1, 2}), cfg);
  CHECK(sol.result == Result::MaxItersReached);
  CHECK(sol.value == vec({1, 2}));
  CHECK(sol.fval == 5.0);
  CHECK(sol.stats.iterations == 0);
  CHECK(calls == 1);
}

TEST_CASE("iteration budget is honoured") {
  TerminationConfig cfg;
  cfg.max_iters = 3;
  const ScalarFunction narrow{[](const Vector& x) { return x[0] * x[0] + 100.0 * x[1] * x[1]; }, {}};
  const Solution sol = iterate(Objective::scalar(narrow), make_gradient_descent(), vec({5.0, -5.0}), cfg);
  CHECK(sol.result == Result::MaxItersReached);
  CHECK(sol.stats.iterations == 3);
}

TEST_CASE("non-finite start and non-finite proposals") {
  const ScalarFunction nan_fn{[](const Vector&) { return NAN; }, {}};
  CHECK(iterate(Objective::scalar(nan_fn), make_bfgs(), vec({1.0})).result == Result::NonFiniteEncountered);

  // Only finite near the origin: rejected proposals shrink the step until it fits.
  const ScalarFunction walled{[](const Vector& x) { return std::abs(x[0]) < 2.0 ? x[0] * x[0] : INFINITY; },
                              [](const Vector& x) -> Vector { return 2.0 * x; }};
  const auto solver = make_gradient_descent(1e-8, 1e-10, searches::BacktrackingArmijo{0.5, 1e-4, 100.0});
  const Solution sol = iterate(Objective::scalar(walled), solver, vec({1.5}));
  CHECK(sol.converged());
  CHECK(std::abs(sol.value[0]) <= 1e-6);
}

TEST_CASE("singular model reports a failed linear solve") {
  // Residual r(x) = (x0 + x1): J = [1 1] is rank deficient, but the normal
  // equations in Gauss-Newton cannot be factorised.
  const VectorFunction fn{[](const Vector& x) { return vec({x[0] + x[1] - 1.0, 2.0 * (x[0] + x[1])}); },
                          [](const Vector&) -> Matrix {
                            Matrix j(2, 2);
                            j << 1, 1, 2, 2;
                            return j;
                          }};
  const Solution sol =
      iterate(Objective::residual(fn), make_gauss_newton(1e-5, 1e-6, descents::SolveMode::NormalEquations),
              vec({0.3, 0.1}));
  CHECK(sol.result == Result::LinearSolveFailed);
}

TEST_CASE("residual objectives keep the residual of the returned point") {
  const VectorFunction fn{[](const Vector& x) { return vec({x[0] - 1.0, 2.0 * (x[1] + 1.0)}); }, {}};
  const Solution sol = iterate(Objective::residual(fn), make_levenberg_marquardt(1e-10, 1e-12), vec({4, 4}));
  REQUIRE(sol.converged());
  REQUIRE(sol.residual.has_value());
  CHECK(*sol.residual == fn.value(sol.value));
  CHECK(sol.fval == doctest::Approx(sol.residual->squaredNorm()));
}

TEST_CASE("trace counts linear solves once per accepted iterate for direct Newton") {
  const auto solver = make_gauss_newton(1e-10, 1e-12);
  const VectorFunction fn{[](const Vector& x) { return vec({std::exp(x[0]) - 2.0, x[0] + x[1]}); }, {}};
  DriverTrace trace;
  const Solution sol = iterate(Objective::residual(fn), solver, vec({0.0, 0.0}), &trace);
  REQUIRE(sol.converged());
  INFO("accepted " << sol.stats.accepted_steps << " rejected " << sol.stats.rejected_steps);
  CHECK(trace.linear_solves == sol.stats.accepted_steps);
}
