#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

namespace oracle {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Vector random_vector(Rng& rng, Index n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Matrix random_spd(Rng& rng, Index n) {
  const Matrix g = random_matrix(rng, n, n);
  return g.transpose() * g + Matrix::Identity(n, n);
}

Matrix with_condition(Rng& rng, Index rows, Index cols, double cond) {
  const Index k = std::min(rows, cols);
  const Matrix u = Eigen::HouseholderQR<Matrix>(random_matrix(rng, rows, rows)).householderQ();
  const Matrix v = Eigen::HouseholderQR<Matrix>(random_matrix(rng, cols, cols)).householderQ();
  Matrix s = Matrix::Zero(rows, cols);
  for (Index i = 0; i < k; ++i) {
    const double frac = k == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(k - 1);
    s(i, i) = std::pow(cond, -frac);
  }
  return u * s * v.transpose();
}

Vector lstsq(const Matrix& a, const Vector& b) { return a.completeOrthogonalDecomposition().solve(b); }

Vector spd_solve(const Matrix& a, const Vector& b) { return a.llt().solve(b); }

Matrix inverse(const Matrix& a) { return a.fullPivLu().inverse(); }

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  if ((f_lo < 0.0) == (f(hi) < 0.0)) throw std::invalid_argument("bisect: no sign change");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Vector newton_solve(const std::function<Vector(const Vector&)>& f, const std::function<Matrix(const Vector&)>& jac,
                    Vector x, double tol, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const Vector fx = f(x);
    if (fx.cwiseAbs().maxCoeff() <= tol) return x;
    x -= jac(x).fullPivLu().solve(fx);
  }
  throw std::runtime_error("newton_solve: no convergence");
}

Matrix resolve_jacobian(const std::function<Vector(const Vector&)>& solve, const Vector& theta, double h) {
  Matrix out;
  for (Index j = 0; j < theta.size(); ++j) {
    const double step = h * (1.0 + std::abs(theta[j]));
    Vector up = theta;
    Vector down = theta;
    up[j] += step;
    down[j] -= step;
    const Vector col = (solve(up) - solve(down)) / (2.0 * step);
    if (j == 0) out.resize(col.size(), theta.size());
    out.col(j) = col;
  }
  return out;
}

}  // namespace oracle
