#include "modopt/core.hpp"

#include <cmath>

#include "modopt/linalg.hpp"

namespace modopt {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Minimise:
      return "minimise";
    case ProblemKind::LeastSquares:
      return "least_squares";
    case ProblemKind::RootFind:
      return "root_find";
    case ProblemKind::FixedPoint:
      return "fixed_point";
  }
  return "unknown";
}

std::string to_string(Result result) {
  switch (result) {
    case Result::Converged:
      return "converged";
    case Result::MaxItersReached:
      return "max_iters_reached";
    case Result::NonFiniteEncountered:
      return "non_finite_encountered";
    case Result::LinearSolveFailed:
      return "linear_solve_failed";
  }
  return "unknown";
}

double max_norm(const Vector& v) {
  double out = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (std::isnan(a)) return a;
    out = std::max(out, a);
  }
  return out;
}

double two_norm(const Vector& v) { return v.norm(); }

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

Norm Norm::max() { return Norm(&max_norm, false); }
Norm Norm::two() { return Norm(&two_norm, true); }
Norm Norm::custom(Fn fn) {
  if (!fn) throw ConfigurationError("custom norm must be callable");
  return Norm(std::move(fn), false);
}

void TerminationConfig::validate() const {
  if (!(rtol >= 0.0) || !(atol >= 0.0)) throw ConfigurationError("tolerances must be nonnegative");
  if (!(rtol > 0.0 || atol > 0.0)) throw ConfigurationError("at least one of rtol/atol must be positive");
  if (max_iters < 0) throw ConfigurationError("max_iters must be nonnegative");
}

bool cauchy_iterate_test(const Vector& x_prev, const Vector& x_next, const TerminationConfig& cfg) {
  const Vector scale = (cfg.atol + cfg.rtol * x_prev.array().abs()).matrix();
  const Vector scaled = ((x_next - x_prev).array() / scale.array()).matrix();
  return cfg.norm(scaled) < 1.0;
}

bool cauchy_termination(const Vector& x_prev, const Vector& x_next, double f_prev, double f_next,
                        const TerminationConfig& cfg) {
  const double f_scale = cfg.atol + cfg.rtol * std::abs(f_prev);
  const bool f_small = std::abs(f_next - f_prev) / f_scale < 1.0;
  return f_small && cauchy_iterate_test(x_prev, x_next, cfg);
}

Vector FnInfo::hessian_times(const Vector& v) const {
  if (hessian) {
    if (hessian->form == HessianForm::Direct) return hessian->matrix * v;
    return linalg::solve_cholesky(hessian->matrix, v);
  }
  if (has_residual_model()) return 2.0 * (jacobian->transpose() * (*jacobian * v));
  throw ConfigurationError("quadratic model requires a Hessian or a residual Jacobian");
}

Matrix FnInfo::hessian_matrix() const {
  if (hessian) {
    if (hessian->form == HessianForm::Direct) return hessian->matrix;
    const Index n = hessian->matrix.rows();
    return linalg::Cholesky(hessian->matrix).solve(Matrix(Matrix::Identity(n, n)));
  }
  if (has_residual_model()) return 2.0 * linalg::gram(*jacobian);
  throw ConfigurationError("quadratic model requires a Hessian or a residual Jacobian");
}

double FnInfo::model_decrease(const Vector& step) const {
  if (has_residual_model()) {
    // |r|^2 - |r + J s|^2 expanded so the constant term cancels exactly.
    const Vector js = *jacobian * step;
    return -2.0 * residual->dot(js) - js.squaredNorm();
  }
  if (!grad) throw ConfigurationError("model decrease requires a gradient");
  return -(grad->dot(step) + 0.5 * step.dot(hessian_times(step)));
}

double FnInfo::linear_decrease(const Vector& step) const {
  if (!grad) throw ConfigurationError("linear decrease requires a gradient");
  return -grad->dot(step);
}

void FnInfo::check_consistency(Index n) const {
  if (!value && !grad && !residual && !jacobian && !hessian)
    throw ConfigurationError("FnInfo has no populated fields");
  if (grad && grad->size() != n) throw ConfigurationError("gradient length mismatch");
  if (jacobian) {
    if (jacobian->cols() != n) throw ConfigurationError("jacobian column count mismatch");
    if (residual && residual->size() != jacobian->rows())
      throw ConfigurationError("jacobian row count does not match residual length");
  }
  if (hessian) {
    const Matrix& h = hessian->matrix;
    if (h.rows() != n || h.cols() != n) throw ConfigurationError("hessian must be N x N");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-8)
      throw ConfigurationError("hessian must be symmetric");
  }
}

}  // namespace modopt
