#include <cmath>
#include <numbers>
#include <random>

#include "modopt/bench.hpp"
#include "modopt/linalg.hpp"

namespace modopt::bench {

double TestProblem::objective(const Vector& x) const {
  if (kind == ProblemKind::Minimise) return scalar.value(x);
  const Vector v = vector.value(x);
  if (kind == ProblemKind::FixedPoint) return (v - x).squaredNorm();
  return v.squaredNorm();
}

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

TestProblem residual_problem(std::string name, VectorFunction fn, Vector x0, std::optional<double> f_star,
                             std::optional<Vector> x_star = std::nullopt,
                             ProblemKind kind = ProblemKind::LeastSquares) {
  TestProblem p;
  p.name = std::move(name);
  p.kind = kind;
  p.vector = std::move(fn);
  p.x0 = std::move(x0);
  p.f_star = f_star;
  p.x_star = std::move(x_star);
  return p;
}

TestProblem extended_rosenbrock(Index n) {
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    Vector r(x.size());
    for (Index i = 0; i + 1 < x.size(); i += 2) {
      r[i] = 10.0 * (x[i + 1] - x[i] * x[i]);
      r[i + 1] = 1.0 - x[i];
    }
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j = Matrix::Zero(x.size(), x.size());
    for (Index i = 0; i + 1 < x.size(); i += 2) {
      j(i, i) = -20.0 * x[i];
      j(i, i + 1) = 10.0;
      j(i + 1, i) = -1.0;
    }
    return j;
  };
  Vector x0(n);
  for (Index i = 0; i < n; ++i) x0[i] = i % 2 == 0 ? -1.2 : 1.0;
  return residual_problem("extended_rosenbrock" + std::to_string(n), fn, x0, 0.0, Vector::Ones(n));
}

TestProblem beale() {
  static const double y[] = {1.5, 2.25, 2.625};
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    Vector r(3);
    for (int i = 0; i < 3; ++i) r[i] = y[i] - x[0] * (1.0 - std::pow(x[1], i + 1));
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(3, 2);
    for (int i = 0; i < 3; ++i) {
      j(i, 0) = -(1.0 - std::pow(x[1], i + 1));
      j(i, 1) = x[0] * (i + 1) * std::pow(x[1], i);
    }
    return j;
  };
  return residual_problem("beale", fn, vec({1.0, 1.0}), 0.0, vec({3.0, 0.5}));
}

TestProblem powell_singular() {
  const double s5 = std::sqrt(5.0);
  const double s10 = std::sqrt(10.0);
  VectorFunction fn;
  fn.value = [=](const Vector& x) {
    return vec({x[0] + 10.0 * x[1], s5 * (x[2] - x[3]), std::pow(x[1] - 2.0 * x[2], 2),
                s10 * std::pow(x[0] - x[3], 2)});
  };
  fn.jacobian = [=](const Vector& x) {
    Matrix j = Matrix::Zero(4, 4);
    j(0, 0) = 1.0;
    j(0, 1) = 10.0;
    j(1, 2) = s5;
    j(1, 3) = -s5;
    const double a = 2.0 * (x[1] - 2.0 * x[2]);
    j(2, 1) = a;
    j(2, 2) = -2.0 * a;
    const double b = 2.0 * s10 * (x[0] - x[3]);
    j(3, 0) = b;
    j(3, 3) = -b;
    return j;
  };
  return residual_problem("powell_singular", fn, vec({3.0, -1.0, 0.0, 1.0}), 0.0, Vector::Zero(4));
}

TestProblem wood() {
  const double s90 = std::sqrt(90.0);
  const double s10 = std::sqrt(10.0);
  VectorFunction fn;
  fn.value = [=](const Vector& x) {
    return vec({10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0], s90 * (x[3] - x[2] * x[2]), 1.0 - x[2],
                s10 * (x[1] + x[3] - 2.0), (x[1] - x[3]) / s10});
  };
  fn.jacobian = [=](const Vector& x) {
    Matrix j = Matrix::Zero(6, 4);
    j(0, 0) = -20.0 * x[0];
    j(0, 1) = 10.0;
    j(1, 0) = -1.0;
    j(2, 2) = -2.0 * s90 * x[2];
    j(2, 3) = s90;
    j(3, 2) = -1.0;
    j(4, 1) = s10;
    j(4, 3) = s10;
    j(5, 1) = 1.0 / s10;
    j(5, 3) = -1.0 / s10;
    return j;
  };
  return residual_problem("wood", fn, vec({-3.0, -1.0, -3.0, -1.0}), 0.0, Vector::Ones(4));
}

TestProblem box3d() {
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    Vector r(10);
    for (int i = 0; i < 10; ++i) {
      const double t = 0.1 * (i + 1);
      r[i] = std::exp(-t * x[0]) - std::exp(-t * x[1]) - x[2] * (std::exp(-t) - std::exp(-10.0 * t));
    }
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(10, 3);
    for (int i = 0; i < 10; ++i) {
      const double t = 0.1 * (i + 1);
      j(i, 0) = -t * std::exp(-t * x[0]);
      j(i, 1) = t * std::exp(-t * x[1]);
      j(i, 2) = -(std::exp(-t) - std::exp(-10.0 * t));
    }
    return j;
  };
  return residual_problem("box3d", fn, vec({0.0, 10.0, 20.0}), 0.0, vec({1.0, 10.0, 1.0}));
}

TestProblem brown_badly_scaled() {
  VectorFunction fn;
  fn.value = [](const Vector& x) { return vec({x[0] - 1e6, x[1] - 2e-6, x[0] * x[1] - 2.0}); };
  fn.jacobian = [](const Vector& x) {
    Matrix j(3, 2);
    j << 1.0, 0.0, 0.0, 1.0, x[1], x[0];
    return j;
  };
  return residual_problem("brown_badly_scaled", fn, vec({1.0, 1.0}), 0.0, vec({1e6, 2e-6}));
}

TestProblem helical_valley() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    double theta = std::atan(x[1] / x[0]) / two_pi;
    if (x[0] < 0.0) theta += 0.5;
    return vec({10.0 * (x[2] - 10.0 * theta), 10.0 * (std::hypot(x[0], x[1]) - 1.0), x[2]});
  };
  fn.jacobian = [](const Vector& x) {
    const double rr = x[0] * x[0] + x[1] * x[1];
    const double r = std::sqrt(rr);
    Matrix j = Matrix::Zero(3, 3);
    j(0, 0) = 100.0 * x[1] / (two_pi * rr);
    j(0, 1) = -100.0 * x[0] / (two_pi * rr);
    j(0, 2) = 10.0;
    j(1, 0) = 10.0 * x[0] / r;
    j(1, 1) = 10.0 * x[1] / r;
    j(2, 2) = 1.0;
    return j;
  };
  return residual_problem("helical_valley", fn, vec({-1.0, 0.0, 0.0}), 0.0, vec({1.0, 0.0, 0.0}));
}

TestProblem trigonometric(Index n) {
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    const double n_ = static_cast<double>(x.size());
    const double cos_sum = x.array().cos().sum();
    Vector r(x.size());
    for (Index i = 0; i < x.size(); ++i)
      r[i] = n_ - cos_sum + static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(x.size(), x.size());
    for (Index i = 0; i < x.size(); ++i) {
      for (Index k = 0; k < x.size(); ++k) j(i, k) = std::sin(x[k]);
      j(i, i) += static_cast<double>(i + 1) * std::sin(x[i]) - std::cos(x[i]);
    }
    return j;
  };
  return residual_problem("trigonometric" + std::to_string(n), fn, Vector::Constant(n, 1.0 / n), std::nullopt);
}

TestProblem freudenstein_roth() {
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    return vec({-13.0 + x[0] + ((5.0 - x[1]) * x[1] - 2.0) * x[1],
                -29.0 + x[0] + ((x[1] + 1.0) * x[1] - 14.0) * x[1]});
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(2, 2);
    j << 1.0, 10.0 * x[1] - 3.0 * x[1] * x[1] - 2.0, 1.0, 3.0 * x[1] * x[1] + 2.0 * x[1] - 14.0;
    return j;
  };
  return residual_problem("freudenstein_roth", fn, vec({0.5, -2.0}), 0.0, vec({5.0, 4.0}));
}

TestProblem bard() {
  static const double y[] = {0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39,
                             0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39};
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    Vector r(15);
    for (int i = 0; i < 15; ++i) {
      const double u = i + 1;
      const double v = 15 - i;
      const double w = std::min(u, v);
      r[i] = y[i] - (x[0] + u / (v * x[1] + w * x[2]));
    }
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(15, 3);
    for (int i = 0; i < 15; ++i) {
      const double u = i + 1;
      const double v = 15 - i;
      const double w = std::min(u, v);
      const double d = v * x[1] + w * x[2];
      j(i, 0) = -1.0;
      j(i, 1) = u * v / (d * d);
      j(i, 2) = u * w / (d * d);
    }
    return j;
  };
  return residual_problem("bard", fn, vec({1.0, 1.0, 1.0}), std::nullopt);
}

TestProblem jennrich_sampson() {
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    Vector r(10);
    for (int i = 0; i < 10; ++i) {
      const double k = i + 1;
      r[i] = 2.0 + 2.0 * k - (std::exp(k * x[0]) + std::exp(k * x[1]));
    }
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(10, 2);
    for (int i = 0; i < 10; ++i) {
      const double k = i + 1;
      j(i, 0) = -k * std::exp(k * x[0]);
      j(i, 1) = -k * std::exp(k * x[1]);
    }
    return j;
  };
  return residual_problem("jennrich_sampson", fn, vec({0.3, 0.4}), std::nullopt);
}

TestProblem linear_full_rank(Index n, Index m) {
  VectorFunction fn;
  fn.value = [n, m](const Vector& x) {
    const double s = 2.0 * x.sum() / static_cast<double>(m);
    Vector r = Vector::Constant(m, -s - 1.0);
    r.head(n) += x;
    return r;
  };
  fn.jacobian = [n, m](const Vector&) {
    Matrix j = Matrix::Constant(m, n, -2.0 / static_cast<double>(m));
    j.topRows(n).diagonal().array() += 1.0;
    return j;
  };
  return residual_problem("linear_full_rank", fn, Vector::Ones(n), static_cast<double>(m - n),
                          Vector::Constant(n, -1.0));
}

TestProblem kowalik_osborne() {
  static const double y[] = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                             0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  static const double u[] = {4.0, 2.0, 1.0, 0.5, 0.25, 0.167, 0.125, 0.1, 0.0833, 0.0714, 0.0625};
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    Vector r(11);
    for (int i = 0; i < 11; ++i) {
      const double num = u[i] * (u[i] + x[1]);
      const double den = u[i] * (u[i] + x[2]) + x[3];
      r[i] = y[i] - x[0] * num / den;
    }
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(11, 4);
    for (int i = 0; i < 11; ++i) {
      const double num = u[i] * (u[i] + x[1]);
      const double den = u[i] * (u[i] + x[2]) + x[3];
      j(i, 0) = -num / den;
      j(i, 1) = -x[0] * u[i] / den;
      j(i, 2) = x[0] * num * u[i] / (den * den);
      j(i, 3) = x[0] * num / (den * den);
    }
    return j;
  };
  return residual_problem("kowalik_osborne", fn, vec({0.25, 0.39, 0.415, 0.39}), std::nullopt);
}

TestProblem scalar_rosenbrock() {
  TestProblem p;
  p.name = "rosenbrock_scalar";
  p.kind = ProblemKind::Minimise;
  p.scalar.value = [](const Vector& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  p.scalar.gradient = [](const Vector& x) {
    const double a = x[1] - x[0] * x[0];
    return vec({-400.0 * a * x[0] - 2.0 * (1.0 - x[0]), 200.0 * a});
  };
  p.x0 = vec({-1.2, 1.0});
  p.f_star = 0.0;
  p.x_star = Vector::Ones(2);
  return p;
}

TestProblem weighted_bowl(Index n) {
  TestProblem p;
  p.name = "weighted_bowl" + std::to_string(n);
  p.kind = ProblemKind::Minimise;
  p.scalar.value = [](const Vector& x) {
    double f = 0.0;
    for (Index i = 0; i < x.size(); ++i) f += static_cast<double>(i + 1) * std::pow(x[i] - static_cast<double>(i), 2);
    return f;
  };
  p.scalar.gradient = [](const Vector& x) {
    Vector g(x.size());
    for (Index i = 0; i < x.size(); ++i) g[i] = 2.0 * static_cast<double>(i + 1) * (x[i] - static_cast<double>(i));
    return g;
  };
  p.x0 = Vector::Constant(n, 10.0);
  p.f_star = 0.0;
  p.x_star = Vector::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  return p;
}

TestProblem cube_root() {
  VectorFunction fn;
  fn.value = [](const Vector& x) { return vec({x[0] * x[0] * x[0] - 8.0}); };
  fn.jacobian = [](const Vector& x) { return Matrix::Constant(1, 1, 3.0 * x[0] * x[0]); };
  return residual_problem("cube_root", fn, vec({1.0}), 0.0, vec({2.0}), ProblemKind::RootFind);
}

TestProblem sqrt2_system() {
  VectorFunction fn;
  fn.value = [](const Vector& x) { return vec({x[0] * x[0] - 2.0, x[1] - 1.0}); };
  fn.jacobian = [](const Vector& x) {
    Matrix j(2, 2);
    j << 2.0 * x[0], 0.0, 0.0, 1.0;
    return j;
  };
  return residual_problem("sqrt2_system", fn, vec({1.0, 0.0}), 0.0, vec({std::sqrt(2.0), 1.0}),
                          ProblemKind::RootFind);
}

TestProblem cosine_fixed_point() {
  VectorFunction fn;
  fn.value = [](const Vector& x) { return Vector(x.array().cos()); };
  fn.jacobian = [](const Vector& x) { return Matrix(Vector(-x.array().sin()).asDiagonal()); };
  return residual_problem("cosine_fixed_point", fn, vec({1.0}), 0.0, std::nullopt, ProblemKind::FixedPoint);
}

}  // namespace

TestProblem rosenbrock(Index n, double scaling, Vector x0) {
  if (n < 2 || x0.size() != n) throw ConfigurationError("rosenbrock needs n >= 2 and a matching start");
  VectorFunction fn;
  fn.value = [scaling](const Vector& x) {
    const Index k = x.size() - 1;
    Vector r(2 * k);
    r.head(k) = scaling * (x.tail(k).array() - x.head(k).array().square()).matrix();
    r.tail(k) = (1.0 - x.head(k).array()).matrix();
    return r;
  };
  fn.jacobian = [scaling](const Vector& x) {
    const Index k = x.size() - 1;
    Matrix j = Matrix::Zero(2 * k, x.size());
    for (Index i = 0; i < k; ++i) {
      j(i, i) = -2.0 * scaling * x[i];
      j(i, i + 1) = scaling;
      j(k + i, i) = -1.0;
    }
    return j;
  };
  return residual_problem("rosenbrock" + std::to_string(n), fn, std::move(x0), 0.0, Vector::Ones(n));
}

TestProblem biggs_exp6() {
  VectorFunction fn;
  fn.value = [](const Vector& x) {
    Vector r(13);
    for (int i = 0; i < 13; ++i) {
      const double t = 0.1 * (i + 1);
      const double y = std::exp(-t) - 5.0 * std::exp(-10.0 * t) + 3.0 * std::exp(-4.0 * t);
      r[i] = x[2] * std::exp(-t * x[0]) - x[3] * std::exp(-t * x[1]) + x[5] * std::exp(-t * x[4]) - y;
    }
    return r;
  };
  fn.jacobian = [](const Vector& x) {
    Matrix j(13, 6);
    for (int i = 0; i < 13; ++i) {
      const double t = 0.1 * (i + 1);
      const double e0 = std::exp(-t * x[0]);
      const double e1 = std::exp(-t * x[1]);
      const double e4 = std::exp(-t * x[4]);
      j(i, 0) = -t * x[2] * e0;
      j(i, 1) = t * x[3] * e1;
      j(i, 2) = e0;
      j(i, 3) = -e1;
      j(i, 4) = -t * x[5] * e4;
      j(i, 5) = e4;
    }
    return j;
  };
  return residual_problem("biggs_exp6", fn, vec({1.0, 2.0, 1.0, 1.0, 1.0, 1.0}), 0.0,
                          vec({1.0, 10.0, 1.0, 5.0, 4.0, 3.0}));
}

Regression linear_regression(std::uint64_t seed, Index samples, double noise) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Regression out;
  out.weights = vec({3.14, -7.0, 2.71});
  out.features.resize(samples, 3);
  for (Index i = 0; i < samples; ++i)
    for (Index k = 0; k < 3; ++k) out.features(i, k) = normal(rng);
  out.targets = out.features * out.weights;
  for (Index i = 0; i < samples; ++i) out.targets[i] += noise * normal(rng);

  const Matrix a = out.features;
  const Vector b = out.targets;
  VectorFunction fn;
  fn.value = [a, b](const Vector& w) { return Vector(a * w - b); };
  fn.jacobian = [a](const Vector&) { return a; };
  const Vector w_star = linalg::solve_lstsq(a, b);
  out.problem = residual_problem("linear_regression", fn, Vector::Zero(3), (a * w_star - b).squaredNorm(), w_star);
  return out;
}

std::vector<TestProblem> builtin_corpus() {
  std::vector<TestProblem> out;
  out.push_back(rosenbrock(2, 10.0, vec({-1.2, 1.0})));
  out.push_back(rosenbrock(100, 10.0, Vector::Zero(100)));
  Vector chained_x0(10);
  for (Index i = 0; i < 10; ++i) chained_x0[i] = i % 2 == 0 ? -1.2 : 1.0;
  TestProblem chained = rosenbrock(10, 10.0, chained_x0);
  chained.name = "chained_rosenbrock10";
  out.push_back(chained);
  out.push_back(extended_rosenbrock(10));
  out.push_back(biggs_exp6());
  out.push_back(linear_regression().problem);
  out.push_back(beale());
  out.push_back(powell_singular());
  out.push_back(wood());
  out.push_back(box3d());
  out.push_back(brown_badly_scaled());
  out.push_back(helical_valley());
  out.push_back(trigonometric(5));
  out.push_back(freudenstein_roth());
  out.push_back(bard());
  out.push_back(jennrich_sampson());
  out.push_back(linear_full_rank(5, 10));
  out.push_back(kowalik_osborne());
  out.push_back(scalar_rosenbrock());
  out.push_back(weighted_bowl(5));
  out.push_back(cube_root());
  out.push_back(sqrt2_system());
  out.push_back(cosine_fixed_point());
  return out;
}

TestProblem find_problem(const std::string& name) {
  for (auto& p : builtin_corpus())
    if (p.name == name) return p;
  throw ConfigurationError("unknown problem: " + name);
}

std::vector<ParametricTestProblem> parametric_corpus() {
  std::vector<ParametricTestProblem> out;

  {  // x^3 - theta = 0
    ParametricProblem p;
    p.kind = ProblemKind::RootFind;
    p.vector = [](const Vector& x, const Vector& t) { return vec({x[0] * x[0] * x[0] - t[0]}); };
    p.jacobian = [](const Vector& x, const Vector&) { return Matrix::Constant(1, 1, 3.0 * x[0] * x[0]); };
    out.push_back({"cube_root", p, vec({8.0}), vec({1.0})});
  }
  {  // (x1^2 - theta1, x2 - theta2) = 0
    ParametricProblem p;
    p.kind = ProblemKind::RootFind;
    p.vector = [](const Vector& x, const Vector& t) { return vec({x[0] * x[0] - t[0], x[1] - t[1]}); };
    out.push_back({"square_root_system", p, vec({2.0, 1.0}), vec({1.0, 0.0})});
  }
  {  // x = theta x + 1
    ParametricProblem p;
    p.kind = ProblemKind::FixedPoint;
    p.vector = [](const Vector& x, const Vector& t) { return Vector((t[0] * x.array() + 1.0).matrix()); };
    out.push_back({"affine_fixed_point", p, vec({0.5}), vec({0.0})});
  }
  {  // x = cos(theta x)
    ParametricProblem p;
    p.kind = ProblemKind::FixedPoint;
    p.vector = [](const Vector& x, const Vector& t) { return Vector((t[0] * x.array()).cos().matrix()); };
    out.push_back({"scaled_cosine_fixed_point", p, vec({0.8}), vec({1.0})});
  }
  {  // 1/2 |x - theta|^2
    ParametricProblem p;
    p.kind = ProblemKind::Minimise;
    p.scalar = [](const Vector& x, const Vector& t) { return 0.5 * (x - t).squaredNorm(); };
    out.push_back({"shifted_bowl", p, vec({1.0, -2.0, 0.5}), Vector::Zero(3)});
  }
  {  // (theta1 - x1)^2 + theta2 (x2 - x1^2)^2, minimum at (theta1, theta1^2)
    ParametricProblem p;
    p.kind = ProblemKind::Minimise;
    p.scalar = [](const Vector& x, const Vector& t) {
      return std::pow(t[0] - x[0], 2) + t[1] * std::pow(x[1] - x[0] * x[0], 2);
    };
    p.gradient = [](const Vector& x, const Vector& t) {
      const double a = x[1] - x[0] * x[0];
      return vec({-2.0 * (t[0] - x[0]) - 4.0 * t[1] * a * x[0], 2.0 * t[1] * a});
    };
    out.push_back({"parametric_rosenbrock", p, vec({1.5, 10.0}), vec({-1.2, 1.0})});
  }
  {  // linear least squares A x - theta
    const Matrix a = (Matrix(4, 2) << 1.0, 0.5, -1.0, 2.0, 0.3, 1.0, 2.0, -0.7).finished();
    ParametricProblem p;
    p.kind = ProblemKind::LeastSquares;
    p.vector = [a](const Vector& x, const Vector& t) { return Vector(a * x - t); };
    p.jacobian = [a](const Vector&, const Vector&) { return a; };
    out.push_back({"linear_least_squares", p, vec({1.0, 2.0, -1.0, 0.5}), Vector::Zero(2)});
  }
  {  // exponential fit with zero residual at x = theta
    ParametricProblem p;
    p.kind = ProblemKind::LeastSquares;
    p.vector = [](const Vector& x, const Vector& t) {
      Vector r(8);
      for (int i = 0; i < 8; ++i) {
        const double s = 0.25 * i;
        r[i] = x[0] * std::exp(x[1] * s) - t[0] * std::exp(t[1] * s);
      }
      return r;
    };
    p.jacobian = [](const Vector& x, const Vector&) {
      Matrix j(8, 2);
      for (int i = 0; i < 8; ++i) {
        const double s = 0.25 * i;
        j(i, 0) = std::exp(x[1] * s);
        j(i, 1) = x[0] * s * std::exp(x[1] * s);
      }
      return j;
    };
    out.push_back({"exponential_fit", p, vec({2.0, -0.5}), vec({1.5, -0.3})});
  }
  return out;
}

}  // namespace modopt::bench
