#include <doctest.h>

#include <cmath>

#include "modopt/searches.hpp"

using namespace modopt;
using namespace modopt::searches;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
FnInfo at(double f, std::optional<Vector> g = std::nullopt) {
  FnInfo info;
  info.value = f;
  info.grad = std::move(g);
  return info;
}
}  // namespace

TEST_CASE("learning rate") {
  const auto r = learning_rate(0.1, at(3.0));
  CHECK(r.alpha == 0.1);
  CHECK(r.accept);
  CHECK(learning_rate(1.0, at(-1.0)).alpha == 1.0);
  const auto again = learning_rate(0.1, at(3.0));
  CHECK(again.alpha == r.alpha);
  CHECK(again.accept == r.accept);
}

TEST_CASE("armijo examples") {
  const FnInfo old_info = at(1.0, vec({2.0}));
  // Last step rejected with step size 0.5: shrink to 0.25.
  const auto [shrunk, s1] = armijo_step(at(5.0), old_info, vec({-0.5}), ArmijoState{0.5, false}, 0.5, 1e-4);
  CHECK_FALSE(shrunk.accept);
  CHECK(shrunk.alpha == 0.25);
  CHECK(s1.step_size == 0.25);
  CHECK_FALSE(s1.satisfied);

  // f(0.5) = 0.25 <= 1 + 0.1 (-0.5)(2) = 0.9: accept and reset to 1.
  const auto [ok, s2] = armijo_step(at(0.25), old_info, vec({-0.5}), ArmijoState{0.5, false}, 0.5, 0.1);
  CHECK(ok.accept);
  CHECK(ok.alpha == 1.0);
  CHECK(s2.satisfied);
}

TEST_CASE("armijo boundary, non-finite values and custom reset") {
  const FnInfo old_info = at(1.0, vec({2.0}));
  CHECK(armijo_step(at(0.9), old_info, vec({-0.5}), ArmijoState{}, 0.5, 0.1).first.accept);
  CHECK_FALSE(armijo_step(at(std::nextafter(0.9, 2.0)), old_info, vec({-0.5}), ArmijoState{}, 0.5, 0.1).first.accept);
  CHECK_FALSE(armijo_step(at(NAN), old_info, vec({-0.5}), ArmijoState{}, 0.5, 0.1).first.accept);
  CHECK_FALSE(armijo_step(at(-INFINITY), old_info, vec({-0.5}), ArmijoState{}, 0.5, 0.1).first.accept);
  CHECK(armijo_step(at(0.0), old_info, vec({-0.5}), ArmijoState{}, 0.5, 0.1, 0.3).first.alpha == 0.3);
  CHECK_THROWS_AS(armijo_step(at(0.0), at(1.0), vec({-0.5}), ArmijoState{}, 0.5, 0.1), ConfigurationError);
}

TEST_CASE("trust-region radius update cases") {
  TrustRegionConstants k;
  k.high_cutoff = 0.9;
  const auto [grow, g] = trust_region_update(0.99, 1.0, TrustRegionState{1.0, 0.0}, k);
  CHECK(grow.accept);
  CHECK(g.radius == 2.0);
  CHECK(g.ratio == doctest::Approx(0.99));

  const auto [keep, kp] = trust_region_update(0.5, 1.0, TrustRegionState{1.0, 0.0}, k);
  CHECK(keep.accept);
  CHECK(kp.radius == 1.0);

  const auto [shrink, sh] = trust_region_update(0.005, 1.0, TrustRegionState{1.0, 0.0}, k);
  CHECK_FALSE(shrink.accept);
  CHECK(sh.radius == 0.25);

  const auto [none, n] = trust_region_update(0.0, 0.0, TrustRegionState{1.0, 0.0}, k);
  CHECK_FALSE(none.accept);
  CHECK(n.radius == 0.25);
  const auto [neg, ng] = trust_region_update(1.0, -1.0, TrustRegionState{1.0, 0.0}, k);
  CHECK_FALSE(neg.accept);
  CHECK(ng.radius == 0.25);
}

TEST_CASE("trust-region constants validation") {
  TrustRegionConstants k;
  CHECK_NOTHROW(k.validate());
  k.low_cutoff = 0.995;
  CHECK_THROWS_AS(k.validate(), ConfigurationError);
  k = {};
  k.high_constant = 0.5;
  CHECK_THROWS_AS(k.validate(), ConfigurationError);
  CHECK_THROWS_AS(validate(Search{LearningRate{0.0}}), ConfigurationError);
  CHECK_THROWS_AS(validate(Search{BacktrackingArmijo{0.5, 1.0}}), ConfigurationError);
  CHECK_NOTHROW(validate(Search{ClassicalTrustRegion{}}));
}

TEST_CASE("classical trust region on an exact quadratic model has ratio one") {
  // f(x) = x^T x, H = 2 I: the model equals the function.
  Matrix h = 2.0 * Matrix::Identity(2, 2);
  TrustRegionState state{1.0, 0.0};
  Vector x = vec({3, -4});
  for (int k = 0; k < 6; ++k) {
    FnInfo old_info = at(x.squaredNorm(), Vector(2.0 * x));
    old_info.hessian = HessianApprox{h, HessianForm::Direct};
    const Vector step = -0.3 * x;
    const Vector next = x + step;
    const double before = state.radius;
    const auto [res, s] = classical_trust_region_step(at(next.squaredNorm()), old_info, step, state, {});
    CHECK(s.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.accept);
    CHECK(s.radius == 2.0 * before);
    state = s;
    x = next;
  }
}

TEST_CASE("linear trust region") {
  // f(x) = a^T x: the linear model is exact.
  const Vector a = vec({1, -2});
  const Vector step = vec({-0.1, 0.3});
  const auto [res, s] = linear_trust_region_step(at(a.dot(step)), at(0.0, a), step, TrustRegionState{1.0, 0.0}, {});
  CHECK(s.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.accept);
  CHECK(s.radius == 2.0);

  // f(x) = x^2 at x = 1 with step -0.5: actual 0.75, predicted 1.
  const auto [r2, s2] = linear_trust_region_step(at(0.25), at(1.0, vec({2.0})), vec({-0.5}), TrustRegionState{}, {});
  CHECK(s2.ratio == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r2.accept);
  CHECK(s2.radius == 1.0);

  // Zero gradient predicts no decrease: reject and shrink.
  const auto [r3, s3] = linear_trust_region_step(at(1.0), at(1.0, vec({0.0})), vec({0.0}), TrustRegionState{}, {});
  CHECK_FALSE(r3.accept);
  CHECK(s3.radius == 0.25);
}

TEST_CASE("trust region treats roundoff-level reductions as agreement") {
  // Near a minimiser both reductions are below the rounding level of f; the
  // noisy actual reduction must not drive the radius to zero.
  FnInfo old_info = at(5.0, vec({1e-12}));
  old_info.hessian = HessianApprox{Matrix::Identity(1, 1), HessianForm::Direct};
  const auto [res, s] =
      classical_trust_region_step(at(5.0 + 8.9e-16), old_info, vec({-1e-12}), TrustRegionState{}, {});
  CHECK(res.accept);
  // Real disagreement is still rejected.
  const auto [bad, sb] = classical_trust_region_step(at(5.5), old_info, vec({-1e-12}), TrustRegionState{}, {});
  CHECK_FALSE(bad.accept);
}

TEST_CASE("search objects") {
  CHECK(name(Search{BacktrackingArmijo{}}) == "backtracking_armijo");
  CHECK(initial_alpha(Search{LearningRate{0.1}}) == 0.1);
  CHECK(initial_alpha(Search{ClassicalTrustRegion{{}, 3.0}}) == 3.0);
  CHECK(needs_quadratic_model(Search{ClassicalTrustRegion{}}));
  CHECK_FALSE(needs_quadratic_model(Search{LinearTrustRegion{}}));
  CHECK_FALSE(needs_quadratic_model(Search{BacktrackingArmijo{}}));
  CHECK(std::holds_alternative<ArmijoState>(initial_state(Search{BacktrackingArmijo{}})));
  CHECK(std::holds_alternative<TrustRegionState>(initial_state(Search{LinearTrustRegion{}})));
  CHECK(std::holds_alternative<std::monostate>(initial_state(Search{LearningRate{}})));

  const Search armijo = BacktrackingArmijo{0.25, 1e-4, 1.0};
  auto [res, state] = step(armijo, at(10.0), at(1.0, vec({1.0})), vec({-1.0}), initial_state(armijo));
  CHECK_FALSE(res.accept);
  CHECK(res.alpha == 0.25);
  CHECK(std::get<ArmijoState>(state).step_size == 0.25);
}
