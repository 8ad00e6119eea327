#pragma once

#include <set>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "modopt/core.hpp"
#include "modopt/objective.hpp"
#include "modopt/solvers.hpp"

// The four entry points. Each problem is lowered along
// fixed point -> root find -> least squares -> minimisation until it reaches a
// kind the solver handles natively; impossible pairings raise
// ConfigurationError before the user function is called.
namespace modopt {

/// Problem kinds a solver runs without lowering.
std::set<ProblemKind> native_kinds(const Solver& solver);

/// The lowering path from `kind` to a kind `solver` handles, starting with `kind`.
std::vector<ProblemKind> lowering_chain(ProblemKind kind, const Solver& solver);

Solution minimise(const ScalarFunction& fn, const Solver& solver, const Vector& x0);
Solution least_squares(const VectorFunction& fn, const Solver& solver, const Vector& x0);
Solution root_find(const VectorFunction& fn, const Solver& solver, const Vector& x0);
Solution fixed_point(const VectorFunction& fn, const Solver& solver, const Vector& x0);

inline Solution minimise(std::function<double(const Vector&)> fn, const Solver& solver, const Vector& x0) {
  return minimise(ScalarFunction{std::move(fn), {}}, solver, x0);
}

// Residual containers: a Vector, a scalar, or std::vector / std::tuple /
// std::pair of containers, flattened depth-first, left to right.

inline void append_flat(std::vector<double>& out, double v) { out.push_back(v); }
inline void append_flat(std::vector<double>& out, const Vector& v) { out.insert(out.end(), v.data(), v.data() + v.size()); }
template <class T>
void append_flat(std::vector<double>& out, const std::vector<T>& items);
template <class... Ts>
void append_flat(std::vector<double>& out, const std::tuple<Ts...>& items);
template <class A, class B>
void append_flat(std::vector<double>& out, const std::pair<A, B>& items);

template <class T>
void append_flat(std::vector<double>& out, const std::vector<T>& items) {
  for (const auto& item : items) append_flat(out, item);
}
template <class... Ts>
void append_flat(std::vector<double>& out, const std::tuple<Ts...>& items) {
  std::apply([&](const auto&... item) { (append_flat(out, item), ...); }, items);
}
template <class A, class B>
void append_flat(std::vector<double>& out, const std::pair<A, B>& items) {
  append_flat(out, items.first);
  append_flat(out, items.second);
}

template <class T>
Vector flatten(const T& residuals) {
  std::vector<double> out;
  append_flat(out, residuals);
  return Eigen::Map<const Vector>(out.data(), static_cast<Index>(out.size()));
}

/// Wraps fn(x, args) returning any flattenable residual container.
template <class Fn, class Args>
VectorFunction bind_residuals(Fn fn, Args args) {
  return VectorFunction{[fn = std::move(fn), args = std::move(args)](const Vector& x) { return flatten(fn(x, args)); },
                        {}};
}

template <class Fn, class Args>
Solution minimise(Fn fn, const Solver& solver, const Vector& x0, Args args) {
  return minimise(ScalarFunction{[fn = std::move(fn), args = std::move(args)](const Vector& x) {
                                   return static_cast<double>(fn(x, args));
                                 },
                                 {}},
                  solver, x0);
}

template <class Fn, class Args>
Solution least_squares(Fn fn, const Solver& solver, const Vector& x0, Args args) {
  return least_squares(bind_residuals(std::move(fn), std::move(args)), solver, x0);
}

template <class Fn, class Args>
Solution root_find(Fn fn, const Solver& solver, const Vector& x0, Args args) {
  return root_find(bind_residuals(std::move(fn), std::move(args)), solver, x0);
}

template <class Fn, class Args>
Solution fixed_point(Fn fn, const Solver& solver, const Vector& x0, Args args) {
  return fixed_point(bind_residuals(std::move(fn), std::move(args)), solver, x0);
}

}  // namespace modopt
