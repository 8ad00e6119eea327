#pragma once

#include "modopt/core.hpp"
#include "modopt/objective.hpp"
#include "modopt/solvers.hpp"

namespace modopt {

/// Counters the driver exposes beyond SolveStats, mainly for tests.
struct DriverTrace {
  int linear_solves = 0;
  std::vector<Vector> accepted_iterates;  // filled only when `record_iterates` is set
  bool record_iterates = false;
};

/// Step-rejection loop: each iteration evaluates the proposed point once,
/// lets the search accept or reject it, and asks the descent for the next
/// proposal from the last accepted iterate.
///
/// Termination is tested only on accepted steps. A proposal that rounds to
/// the current iterate is committed as accepted, since no smaller step can
/// change it.
Solution iterate(const Objective& objective, const ComposedSolver& solver, const Vector& x0,
                 const TerminationConfig& cfg, DriverTrace* trace = nullptr);

inline Solution iterate(const Objective& objective, const ComposedSolver& solver, const Vector& x0,
                        DriverTrace* trace = nullptr) {
  return iterate(objective, solver, x0, solver.termination, trace);
}

}  // namespace modopt
