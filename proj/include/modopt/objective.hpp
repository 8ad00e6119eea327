#pragma once

#include <functional>

#include "modopt/core.hpp"

namespace modopt {

/// Scalar objective with an optional analytic gradient.
struct ScalarFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;  // may be empty
};

/// Vector-valued function (residuals, root equations, fixed-point maps) with
/// an optional analytic Jacobian.
struct VectorFunction {
  std::function<Vector(const Vector&)> value;
  std::function<Matrix(const Vector&)> jacobian;  // may be empty
};

namespace fd {

/// Relative step used for first derivatives: h_i = kStep * (1 + |x_i|).
inline constexpr double kStep = 1e-6;
/// Relative step used when differencing a gradient into a Hessian.
inline constexpr double kHessianStep = 1e-5;

Vector gradient(const std::function<double(const Vector&)>& f, const Vector& x, double rel_step = kStep);
Matrix jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double rel_step = kStep);
/// Symmetrised central-difference Jacobian of a gradient.
Matrix hessian(const std::function<Vector(const Vector&)>& grad, const Vector& x,
               double rel_step = kHessianStep);

}  // namespace fd

/// The callable a solve iterates on, in either scalar or residual form.
///
/// In residual form the scalar objective is sum(r_i^2). `evaluate` performs
/// exactly one call of the user function; derivatives are computed from the
/// stored evaluation on demand.
class Objective {
 public:
  struct Point {
    Vector x;
    double value = 0.0;
    Vector residual;  // empty in scalar form
    bool finite = true;
  };

  static Objective scalar(ScalarFunction fn);
  static Objective residual(VectorFunction fn);

  bool is_residual() const { return residual_form_; }

  Point evaluate(const Vector& x) const;
  Vector gradient(const Point& p) const;
  Matrix jacobian(const Point& p) const;

 private:
  Objective() = default;

  bool residual_form_ = false;
  ScalarFunction scalar_;
  VectorFunction residual_;
};

}  // namespace modopt
