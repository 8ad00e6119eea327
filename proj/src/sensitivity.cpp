#include "modopt/sensitivity.hpp"

#include <cmath>

#include "modopt/linalg.hpp"
#include "modopt/objective.hpp"

namespace modopt {

namespace {

Matrix diff_x(const ParamVectorFn& f, const Vector& x, const Vector& theta, double step = fd::kStep) {
  return fd::jacobian([&](const Vector& xx) { return f(xx, theta); }, x, step);
}

Matrix diff_theta(const ParamVectorFn& f, const Vector& x, const Vector& theta, double step = fd::kStep) {
  return fd::jacobian([&](const Vector& tt) { return f(x, tt); }, theta, step);
}

constexpr double kSecondStep = 1e-4;

double f_eval(const ParamScalarFn& f, const std::pair<Vector, Vector>& at) { return f(at.first, at.second); }

// d^2 f / (du_i dv_j) by four-point central differences, where u and v are
// (possibly the same) blocks of the arguments selected by `place`.
template <class Place>
Matrix second_differences(const ParamScalarFn& f, const Vector& u, const Vector& v, Place place) {
  Matrix out(u.size(), v.size());
  for (Index i = 0; i < u.size(); ++i) {
    const double hi = kSecondStep * (1.0 + std::abs(u[i]));
    for (Index j = 0; j < v.size(); ++j) {
      const double hj = kSecondStep * (1.0 + std::abs(v[j]));
      auto at = [&](double si, double sj) { return place(i, si * hi, j, sj * hj); };
      out(i, j) = (f_eval(f, at(1, 1)) - f_eval(f, at(1, -1)) - f_eval(f, at(-1, 1)) + f_eval(f, at(-1, -1))) /
                  (4.0 * hi * hj);
    }
  }
  return out;
}

}  // namespace

Matrix implicit_jacobian(const ImplicitSystem& sys, const Vector& x_star, const Vector& theta,
                         ImplicitJacobianStats* stats) {
  if (!sys.F) throw ConfigurationError("implicit system needs F");
  const Matrix a = sys.dFdx ? sys.dFdx(x_star, theta) : diff_x(sys.F, x_star, theta);
  const Matrix b = sys.dFdtheta ? sys.dFdtheta(x_star, theta) : diff_theta(sys.F, x_star, theta);
  if (a.rows() != x_star.size() || a.cols() != x_star.size())
    throw ConfigurationError("dF/dx must be N x N");
  if (b.rows() != x_star.size() || b.cols() != theta.size()) throw ConfigurationError("dF/dtheta must be N x M");
  if (!a.allFinite() || !b.allFinite()) throw LinearSolveError("non-finite implicit system derivatives");

  const linalg::PivotedQR qr(a);
  if (stats) ++stats->factorizations;
  Matrix out(x_star.size(), theta.size());
  for (Index j = 0; j < theta.size(); ++j) {
    out.col(j) = -qr.solve_square(b.col(j));
    if (stats) ++stats->solves;
  }
  return out;
}

ImplicitSystem task_system(const ParametricProblem& p) {
  ImplicitSystem sys;
  switch (p.kind) {
    case ProblemKind::RootFind: {
      if (!p.vector) throw ConfigurationError("root-find problem needs its equations");
      sys.F = p.vector;
      if (p.jacobian) sys.dFdx = p.jacobian;
      break;
    }
    case ProblemKind::FixedPoint: {
      if (!p.vector) throw ConfigurationError("fixed-point problem needs its map");
      const ParamVectorFn f = p.vector;
      const ParamMatrixFn jf = p.jacobian;
      sys.F = [f](const Vector& x, const Vector& t) -> Vector { return f(x, t) - x; };
      sys.dFdx = [f, jf](const Vector& x, const Vector& t) -> Matrix {
        Matrix j = jf ? jf(x, t) : diff_x(f, x, t);
        j.diagonal().array() -= 1.0;
        return j;
      };
      sys.dFdtheta = [f](const Vector& x, const Vector& t) { return diff_theta(f, x, t); };
      break;
    }
    case ProblemKind::Minimise: {
      if (!p.scalar && !p.gradient) throw ConfigurationError("minimisation problem needs f or its gradient");
      if (p.gradient) {
        const ParamVectorFn g = p.gradient;
        sys.F = g;
        sys.dFdx = [g](const Vector& x, const Vector& t) {
          const Matrix h = diff_x(g, x, t, fd::kHessianStep);
          return Matrix(0.5 * (h + h.transpose()));
        };
        sys.dFdtheta = [g](const Vector& x, const Vector& t) { return diff_theta(g, x, t, fd::kHessianStep); };
      } else {
        const ParamScalarFn f = p.scalar;
        sys.F = [f](const Vector& x, const Vector& t) {
          return fd::gradient([&](const Vector& xx) { return f(xx, t); }, x);
        };
        sys.dFdx = [f](const Vector& x, const Vector& t) {
          return second_differences(f, x, x, [&](Index i, double di, Index j, double dj) {
            Vector xx = x;
            xx[i] += di;
            xx[j] += dj;
            return std::pair<Vector, Vector>(xx, t);
          });
        };
        sys.dFdtheta = [f](const Vector& x, const Vector& t) {
          return second_differences(f, x, t, [&](Index i, double di, Index j, double dj) {
            Vector xx = x;
            Vector tt = t;
            xx[i] += di;
            tt[j] += dj;
            return std::pair<Vector, Vector>(xx, tt);
          });
        };
      }
      break;
    }
    case ProblemKind::LeastSquares: {
      if (!p.vector) throw ConfigurationError("least-squares problem needs its residuals");
      const ParamVectorFn r = p.vector;
      const ParamMatrixFn jr = p.jacobian;
      auto jac = [r, jr](const Vector& x, const Vector& t) { return jr ? jr(x, t) : diff_x(r, x, t); };
      sys.F = [r, jac](const Vector& x, const Vector& t) -> Vector {
        return 2.0 * linalg::transpose_times(jac(x, t), r(x, t));
      };
      if (p.full_hessian) {
        const ParamVectorFn F = sys.F;
        sys.dFdx = [F](const Vector& x, const Vector& t) {
          const Matrix h = diff_x(F, x, t, fd::kHessianStep);
          return Matrix(0.5 * (h + h.transpose()));
        };
        sys.dFdtheta = [F](const Vector& x, const Vector& t) { return diff_theta(F, x, t, fd::kHessianStep); };
      } else {
        sys.dFdx = [jac](const Vector& x, const Vector& t) -> Matrix { return 2.0 * linalg::gram(jac(x, t)); };
        sys.dFdtheta = [r, jac](const Vector& x, const Vector& t) -> Matrix {
          return 2.0 * jac(x, t).transpose() * diff_theta(r, x, t);
        };
      }
      break;
    }
  }
  return sys;
}

}  // namespace modopt
