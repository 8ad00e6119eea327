#pragma once

#include <functional>

#include "modopt/core.hpp"

namespace modopt::linalg {

/// A^T A through the dense kernels.
Matrix gram(const Matrix& a);

/// A^T x through the dense kernels.
Vector transpose_times(const Matrix& a, const Vector& x);

/// Cholesky factorisation A = L L^T of a symmetric positive-definite matrix.
///
/// Throws LinearSolveError when a pivot is <= 1e-14 or the input is not
/// finite, and ConfigurationError when A is not square or not symmetric to
/// 1e-8 (relative to its largest entry).
class Cholesky {
 public:
  static constexpr double kMinPivot = 1e-14;

  explicit Cholesky(const Matrix& a);

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;
  const Matrix& lower() const { return l_; }

 private:
  Matrix l_;
};

Vector solve_cholesky(const Matrix& a, const Vector& b);

using LinearOperator = std::function<Vector(const Vector&)>;

struct CgResult {
  Vector x;
  int iterations = 0;
  bool converged = false;
};

/// Unpreconditioned conjugate gradients for SPD systems.
///
/// Stops once |A x - b|_2 <= tol |b|_2 or after max_iter iterations; the
/// latter is reported through `converged = false`.
CgResult solve_cg(const LinearOperator& a, const Vector& b, double tol, int max_iter);
CgResult solve_cg(const Matrix& a, const Vector& b, double tol, int max_iter);

/// Householder QR with column pivoting, A P = Q R.
///
/// Columns whose |R_kk| <= 1e-12 |R_00| are treated as rank deficient. The
/// least-squares solve returns the minimum-norm minimiser, using a second QR
/// of the leading rank rows (a complete orthogonal decomposition) when A is
/// rank deficient.
class PivotedQR {
 public:
  static constexpr double kRankTolerance = 1e-12;

  explicit PivotedQR(const Matrix& a);

  Index rank() const { return rank_; }
  Index rows() const { return r_.rows(); }
  Index cols() const { return r_.cols(); }

  /// Minimum-norm least-squares solution of A x ~= b.
  Vector solve(const Vector& b) const;

  /// Solve of a square full-rank system; throws LinearSolveError on rank deficiency.
  Vector solve_square(const Vector& b) const;

 private:
  Matrix r_;                          // R in the upper triangle (A P = Q R)
  std::vector<Vector> reflectors_;    // Householder vectors of Q
  Vector betas_;
  std::vector<Index> perm_;           // column k of A P is column perm_[k] of A
  Index rank_ = 0;
  // QR of R(0:rank, :)^T, used for the minimum-norm solve when rank < cols.
  Matrix cod_r_;
  std::vector<Vector> cod_reflectors_;
  Vector cod_betas_;
};

Vector solve_lstsq(const Matrix& a, const Vector& b);

}  // namespace modopt::linalg
