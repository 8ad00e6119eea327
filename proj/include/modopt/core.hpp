#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace modopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ProblemKind { Minimise, LeastSquares, RootFind, FixedPoint };

std::string to_string(ProblemKind kind);

/// Outcome of a solve.
enum class Result { Converged, MaxItersReached, NonFiniteEncountered, LinearSolveFailed };

std::string to_string(Result result);

/// A linear system could not be solved (non positive-definite, singular, non-finite).
class LinearSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid solver/problem configuration, detected before any iteration runs.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A safeguarded scalar root find (e.g. for a damping parameter) ran out of iterations.
class RootFindStalled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double max_norm(const Vector& v);
double two_norm(const Vector& v);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

/// Vector norm used for termination and trust-region constraints.
///
/// The Euclidean norm is tagged so descents can use closed-form boundary
/// intersections; any other norm falls back to bisection.
class Norm {
 public:
  using Fn = std::function<double(const Vector&)>;

  static Norm max();
  static Norm two();
  static Norm custom(Fn fn);

  double operator()(const Vector& v) const { return fn_(v); }
  bool is_euclidean() const { return euclidean_; }

 private:
  Norm(Fn fn, bool euclidean) : fn_(std::move(fn)), euclidean_(euclidean) {}

  Fn fn_;
  bool euclidean_;
};

struct TerminationConfig {
  double rtol = 1e-5;
  double atol = 1e-6;
  Norm norm = Norm::max();
  int max_iters = 2000;

  /// Throws ConfigurationError when the tolerances or budget are invalid.
  void validate() const;
};

/// Scaled successive-difference test on both the objective and the iterate.
///
/// Passes iff |f_next - f_prev| / (atol + rtol |f_prev|) < 1 and
/// norm((x_next - x_prev) / (atol + rtol |x_prev|)) < 1, elementwise.
bool cauchy_termination(const Vector& x_prev, const Vector& x_next, double f_prev, double f_next,
                        const TerminationConfig& cfg);

/// Only the iterate half of cauchy_termination.
bool cauchy_iterate_test(const Vector& x_prev, const Vector& x_next, const TerminationConfig& cfg);

enum class HessianForm { Direct, Inverse };

/// A Hessian approximation, stored either as H or as H^-1 (never both).
struct HessianApprox {
  Matrix matrix;
  HessianForm form = HessianForm::Direct;
};

/// Local information about the objective at one iterate.
///
/// For residual problems the scalar objective is sum(r_i^2), so the implied
/// gradient is 2 J^T r and the implied Hessian model is 2 J^T J.
struct FnInfo {
  std::optional<double> value;
  std::optional<Vector> grad;
  std::optional<Vector> residual;
  std::optional<Matrix> jacobian;
  std::optional<HessianApprox> hessian;

  bool has_residual_model() const { return residual.has_value() && jacobian.has_value(); }
  bool has_quadratic_model() const { return grad.has_value() && (hessian.has_value() || has_residual_model()); }

  /// H v for the quadratic model; inverse-form approximations are solved against.
  Vector hessian_times(const Vector& v) const;

  /// Dense H (materialised from J or by inverting an inverse-form approximation).
  Matrix hessian_matrix() const;

  /// m(0) - m(step) of the quadratic model.
  double model_decrease(const Vector& step) const;

  /// -grad^T step.
  double linear_decrease(const Vector& step) const;

  /// Throws ConfigurationError when populated fields have inconsistent shapes.
  void check_consistency(Index n) const;
};

struct SolveStats {
  int iterations = 0;
  int fn_evals = 0;
  int grad_evals = 0;
  int accepted_steps = 0;
  int rejected_steps = 0;
  /// max-norm of the original equations at the returned point, attached when a
  /// root-find or fixed-point problem was lowered onto a minimiser.
  std::optional<double> residual_check;
};

struct Solution {
  Vector value;
  double fval = 0.0;
  std::optional<Vector> residual;
  Result result = Result::MaxItersReached;
  SolveStats stats;
  /// Problem kinds visited while lowering, starting with the requested kind.
  std::vector<ProblemKind> lowering;

  bool converged() const { return result == Result::Converged; }
};

}  // namespace modopt
