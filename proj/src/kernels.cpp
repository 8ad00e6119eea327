#include "modopt/kernels.hpp"

#include <atomic>

#include <omp.h>

namespace modopt::kernels {

namespace {

std::atomic<Index> g_threshold{64 * 64};

double column_dot(const Matrix& a, Index i, Index j, Index row0) {
  const double* ci = a.col(i).data();
  const double* cj = a.col(j).data();
  double s = 0.0;
  for (Index r = row0; r < a.rows(); ++r) s += ci[r] * cj[r];
  return s;
}

double column_dot(const Matrix& a, Index j, const Vector& x) {
  const double* cj = a.col(j).data();
  const double* xd = x.data();
  double s = 0.0;
  for (Index r = 0; r < a.rows(); ++r) s += cj[r] * xd[r];
  return s;
}

void reflect_column(Matrix& a, const Vector& v, double beta, Index row0, Index j) {
  double* cj = a.col(j).data();
  const Index m = a.rows() - row0;
  double w = 0.0;
  for (Index r = 0; r < m; ++r) w += v[r] * cj[row0 + r];
  w *= beta;
  for (Index r = 0; r < m; ++r) cj[row0 + r] -= w * v[r];
}

}  // namespace

namespace serial {

Matrix gram(const Matrix& a) {
  const Index n = a.cols();
  Matrix out(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double s = column_dot(a, i, j, 0);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

Vector transpose_times(const Matrix& a, const Vector& x) {
  Vector out(a.cols());
  for (Index j = 0; j < a.cols(); ++j) out[j] = column_dot(a, j, x);
  return out;
}

void apply_reflector(Matrix& a, const Vector& v, double beta, Index row0, Index col0) {
  for (Index j = col0; j < a.cols(); ++j) reflect_column(a, v, beta, row0, j);
}

}  // namespace serial

namespace parallel {

Matrix gram(const Matrix& a) {
  const Index n = a.cols();
  Matrix out(n, n);
#pragma omp parallel for schedule(dynamic, 4) default(none) shared(a, out, n)
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double s = column_dot(a, i, j, 0);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

Vector transpose_times(const Matrix& a, const Vector& x) {
  const Index n = a.cols();
  Vector out(n);
#pragma omp parallel for schedule(static) default(none) shared(a, x, out, n)
  for (Index j = 0; j < n; ++j) out[j] = column_dot(a, j, x);
  return out;
}

void apply_reflector(Matrix& a, const Vector& v, double beta, Index row0, Index col0) {
  const Index n = a.cols();
#pragma omp parallel for schedule(static) default(none) shared(a, v, beta, row0, col0, n)
  for (Index j = col0; j < n; ++j) reflect_column(a, v, beta, row0, j);
}

}  // namespace parallel

Index parallel_threshold() { return g_threshold.load(std::memory_order_relaxed); }
void set_parallel_threshold(Index work) { g_threshold.store(work, std::memory_order_relaxed); }

int max_threads() { return omp_get_max_threads(); }

namespace {
bool go_parallel(Index work) { return max_threads() > 1 && work >= parallel_threshold(); }
}  // namespace

Matrix gram(const Matrix& a) {
  return go_parallel(a.rows() * a.cols() * a.cols() / 2) ? parallel::gram(a) : serial::gram(a);
}

Vector transpose_times(const Matrix& a, const Vector& x) {
  return go_parallel(a.rows() * a.cols()) ? parallel::transpose_times(a, x) : serial::transpose_times(a, x);
}

void apply_reflector(Matrix& a, const Vector& v, double beta, Index row0, Index col0) {
  const Index work = (a.rows() - row0) * (a.cols() - col0);
  if (go_parallel(work)) {
    parallel::apply_reflector(a, v, beta, row0, col0);
  } else {
    serial::apply_reflector(a, v, beta, row0, col0);
  }
}

}  // namespace modopt::kernels
