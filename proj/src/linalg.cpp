#include "modopt/linalg.hpp"

#include <cmath>
#include <numeric>

#include "modopt/kernels.hpp"

namespace modopt::linalg {

Matrix gram(const Matrix& a) { return kernels::gram(a); }

Vector transpose_times(const Matrix& a, const Vector& x) { return kernels::transpose_times(a, x); }

Cholesky::Cholesky(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ConfigurationError("cholesky requires a nonempty square matrix");
  if (!a.allFinite()) throw LinearSolveError("cholesky: non-finite matrix entry");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw ConfigurationError("cholesky requires a symmetric matrix");

  const Index n = a.rows();
  l_ = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Index k = 0; k < j; ++k) d -= l_(j, k) * l_(j, k);
    if (!(d > kMinPivot)) throw LinearSolveError("cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l_(j, j) = ljj;
    for (Index i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (Index k = 0; k < j; ++k) s -= l_(i, k) * l_(j, k);
      l_(i, j) = s / ljj;
    }
  }
}

Vector Cholesky::solve(const Vector& b) const {
  if (b.size() != l_.rows()) throw ConfigurationError("cholesky: right-hand side length mismatch");
  const Index n = l_.rows();
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    double s = b[i];
    for (Index k = 0; k < i; ++k) s -= l_(i, k) * y[k];
    y[i] = s / l_(i, i);
  }
  Vector x(n);
  for (Index i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (Index k = i + 1; k < n; ++k) s -= l_(k, i) * x[k];
    x[i] = s / l_(i, i);
  }
  return x;
}

Matrix Cholesky::solve(const Matrix& b) const {
  Matrix out(b.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) out.col(j) = solve(Vector(b.col(j)));
  return out;
}

Vector solve_cholesky(const Matrix& a, const Vector& b) { return Cholesky(a).solve(b); }

CgResult solve_cg(const LinearOperator& a, const Vector& b, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ConfigurationError("cg tolerance must be positive");
  if (!b.allFinite()) throw LinearSolveError("cg: non-finite right-hand side");
  CgResult out;
  out.x = Vector::Zero(b.size());
  const double target = tol * b.norm();
  Vector r = b;
  Vector p = r;
  double rs = r.squaredNorm();
  if (std::sqrt(rs) <= target) {
    out.converged = true;
    return out;
  }
  for (int it = 1; it <= max_iter; ++it) {
    const Vector ap = a(p);
    const double curvature = p.dot(ap);
    if (!std::isfinite(curvature) || curvature <= 0.0)
      throw LinearSolveError("cg: operator is not positive definite");
    const double step = rs / curvature;
    out.x += step * p;
    r -= step * ap;
    const double rs_next = r.squaredNorm();
    out.iterations = it;
    if (!std::isfinite(rs_next)) throw LinearSolveError("cg: non-finite residual");
    if (std::sqrt(rs_next) <= target) {
      out.converged = true;
      return out;
    }
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  return out;
}

CgResult solve_cg(const Matrix& a, const Vector& b, double tol, int max_iter) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw ConfigurationError("cg: dimension mismatch");
  return solve_cg([&a](const Vector& v) -> Vector { return a * v; }, b, tol, max_iter);
}

namespace {

// Householder vector for x: (I - beta v v^T) x = alpha e_1.
struct Reflector {
  Vector v;
  double beta = 0.0;
  double alpha = 0.0;
};

Reflector make_reflector(const Vector& x) {
  Reflector h;
  h.v = x;
  const double norm = x.norm();
  if (norm == 0.0) {
    h.alpha = 0.0;
    return h;
  }
  h.alpha = x[0] >= 0.0 ? -norm : norm;
  h.v[0] -= h.alpha;
  const double vv = h.v.squaredNorm();
  h.beta = vv > 0.0 ? 2.0 / vv : 0.0;
  return h;
}

// Householder QR in place: R overwrites the upper triangle, column pivoting when `perm` is set.
void householder_in_place(Matrix& a, std::vector<Vector>* reflectors, Vector& betas,
                          std::vector<Index>* perm) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index steps = std::min(m, n);
  betas = Vector::Zero(steps);
  reflectors->assign(static_cast<std::size_t>(steps), Vector());
  for (Index k = 0; k < steps; ++k) {
    if (perm) {
      Index best = k;
      double best_norm = -1.0;
      for (Index j = k; j < n; ++j) {
        const double cn = a.col(j).tail(m - k).squaredNorm();
        if (cn > best_norm) {
          best_norm = cn;
          best = j;
        }
      }
      if (best != k) {
        a.col(k).swap(a.col(best));
        std::swap((*perm)[static_cast<std::size_t>(k)], (*perm)[static_cast<std::size_t>(best)]);
      }
    }
    Reflector h = make_reflector(Vector(a.col(k).tail(m - k)));
    a(k, k) = h.alpha;
    a.col(k).tail(m - k - 1).setZero();
    if (h.beta != 0.0 && k + 1 < n) kernels::apply_reflector(a, h.v, h.beta, k, k + 1);
    betas[k] = h.beta;
    (*reflectors)[static_cast<std::size_t>(k)] = std::move(h.v);
  }
}

Vector apply_reflectors_transposed(const std::vector<Vector>& vs, const Vector& betas, Vector b) {
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const Index row0 = static_cast<Index>(k);
    const Index len = vs[k].size();
    const double w = betas[row0] * vs[k].dot(b.segment(row0, len));
    b.segment(row0, len) -= w * vs[k];
  }
  return b;
}

Vector apply_reflectors(const std::vector<Vector>& vs, const Vector& betas, Vector b) {
  for (std::size_t k = vs.size(); k-- > 0;) {
    const Index row0 = static_cast<Index>(k);
    const Index len = vs[k].size();
    const double w = betas[row0] * vs[k].dot(b.segment(row0, len));
    b.segment(row0, len) -= w * vs[k];
  }
  return b;
}

}  // namespace

PivotedQR::PivotedQR(const Matrix& a) : r_(a) {
  if (a.rows() == 0 || a.cols() == 0) throw ConfigurationError("qr requires a nonempty matrix");
  if (!a.allFinite()) throw LinearSolveError("qr: non-finite matrix entry");
  const Index n = a.cols();
  perm_.resize(static_cast<std::size_t>(n));
  std::iota(perm_.begin(), perm_.end(), Index{0});
  householder_in_place(r_, &reflectors_, betas_, &perm_);

  const Index steps = std::min(a.rows(), n);
  const double r00 = std::abs(r_(0, 0));
  rank_ = 0;
  if (r00 > 0.0) {
    while (rank_ < steps && std::abs(r_(rank_, rank_)) > kRankTolerance * r00) ++rank_;
  }
  if (rank_ > 0 && rank_ < n) {
    cod_r_ = r_.topRows(rank_).triangularView<Eigen::Upper>().toDenseMatrix().transpose();
    householder_in_place(cod_r_, &cod_reflectors_, cod_betas_, nullptr);
  }
}

Vector PivotedQR::solve(const Vector& b) const {
  if (b.size() != r_.rows()) throw ConfigurationError("qr: right-hand side length mismatch");
  if (!b.allFinite()) throw LinearSolveError("qr: non-finite right-hand side");
  const Index n = r_.cols();
  const Vector c = apply_reflectors_transposed(reflectors_, betas_, b);
  Vector y = Vector::Zero(n);
  if (rank_ == n) {
    for (Index i = n - 1; i >= 0; --i) {
      double s = c[i];
      for (Index k = i + 1; k < n; ++k) s -= r_(i, k) * y[k];
      y[i] = s / r_(i, i);
    }
  } else if (rank_ > 0) {
    // R1 = L^T W^T with R1^T = W L; solve L^T z = c1 then y = W [z; 0].
    Vector z = Vector::Zero(n);
    for (Index i = 0; i < rank_; ++i) {
      double s = c[i];
      for (Index k = 0; k < i; ++k) s -= cod_r_(k, i) * z[k];
      z[i] = s / cod_r_(i, i);
    }
    y = apply_reflectors(cod_reflectors_, cod_betas_, z);
  }
  Vector x(n);
  for (Index k = 0; k < n; ++k) x[perm_[static_cast<std::size_t>(k)]] = y[k];
  if (!x.allFinite()) throw LinearSolveError("qr: non-finite solution");
  return x;
}

Vector PivotedQR::solve_square(const Vector& b) const {
  if (r_.rows() != r_.cols()) throw ConfigurationError("qr: square solve requires a square matrix");
  if (rank_ < r_.cols()) throw LinearSolveError("qr: matrix is singular");
  return solve(b);
}

Vector solve_lstsq(const Matrix& a, const Vector& b) { return PivotedQR(a).solve(b); }

}  // namespace modopt::linalg
