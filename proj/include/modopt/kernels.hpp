#pragma once

#include "modopt/core.hpp"

// Dense inner-loop kernels used by the linear algebra layer.
//
// Every kernel exists twice: a serial reference in `serial::` and an OpenMP
// version in `parallel::`. Each output entry is produced by exactly one
// thread with the same summation order as the reference, so the two agree
// bitwise. The unqualified entry points pick the parallel version once the
// work exceeds `parallel_threshold()`.
namespace modopt::kernels {

namespace serial {

/// A^T A (symmetric, both triangles filled).
Matrix gram(const Matrix& a);

/// A^T x.
Vector transpose_times(const Matrix& a, const Vector& x);

/// A[row0:, col0:] -= beta * v (v^T A[row0:, col0:]), with v indexed from row0.
void apply_reflector(Matrix& a, const Vector& v, double beta, Index row0, Index col0);

}  // namespace serial

namespace parallel {

Matrix gram(const Matrix& a);
Vector transpose_times(const Matrix& a, const Vector& x);
void apply_reflector(Matrix& a, const Vector& v, double beta, Index row0, Index col0);

}  // namespace parallel

/// Work size (rows * cols touched) above which dispatch goes parallel.
Index parallel_threshold();
void set_parallel_threshold(Index work);

int max_threads();

Matrix gram(const Matrix& a);
Vector transpose_times(const Matrix& a, const Vector& x);
void apply_reflector(Matrix& a, const Vector& v, double beta, Index row0, Index col0);

}  // namespace modopt::kernels
