#include "modopt/objective.hpp"

#include <cmath>

#include "modopt/linalg.hpp"

namespace modopt {

namespace fd {

Vector gradient(const std::function<double(const Vector&)>& f, const Vector& x, double rel_step) {
  Vector g(x.size());
  Vector probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

Matrix jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double rel_step) {
  Matrix j;
  Vector probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + h;
    const Vector up = f(probe);
    probe[i] = x[i] - h;
    const Vector down = f(probe);
    probe[i] = x[i];
    if (i == 0) j.resize(up.size(), x.size());
    j.col(i) = (up - down) / (2.0 * h);
  }
  return j;
}

Matrix hessian(const std::function<Vector(const Vector&)>& grad, const Vector& x, double rel_step) {
  const Matrix h = jacobian(grad, x, rel_step);
  return 0.5 * (h + h.transpose());
}

}  // namespace fd

Objective Objective::scalar(ScalarFunction fn) {
  if (!fn.value) throw ConfigurationError("scalar objective requires a value callable");
  Objective o;
  o.residual_form_ = false;
  o.scalar_ = std::move(fn);
  return o;
}

Objective Objective::residual(VectorFunction fn) {
  if (!fn.value) throw ConfigurationError("residual objective requires a value callable");
  Objective o;
  o.residual_form_ = true;
  o.residual_ = std::move(fn);
  return o;
}

Objective::Point Objective::evaluate(const Vector& x) const {
  Point p;
  p.x = x;
  if (residual_form_) {
    p.residual = residual_.value(x);
    p.value = p.residual.squaredNorm();
  } else {
    p.value = scalar_.value(x);
  }
  p.finite = std::isfinite(p.value);
  return p;
}

Matrix Objective::jacobian(const Point& p) const {
  if (!residual_form_) throw ConfigurationError("jacobian requested from a scalar objective");
  Matrix j = residual_.jacobian ? residual_.jacobian(p.x) : fd::jacobian(residual_.value, p.x);
  if (j.rows() != p.residual.size() || j.cols() != p.x.size())
    throw ConfigurationError("jacobian shape does not match residual and parameter sizes");
  return j;
}

Vector Objective::gradient(const Point& p) const {
  if (residual_form_) return 2.0 * linalg::transpose_times(jacobian(p), p.residual);
  Vector g = scalar_.gradient ? scalar_.gradient(p.x) : fd::gradient(scalar_.value, p.x);
  if (g.size() != p.x.size()) throw ConfigurationError("gradient length does not match parameter size");
  return g;
}

}  // namespace modopt
