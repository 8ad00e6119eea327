#pragma once

#include <utility>
#include <variant>

#include "modopt/core.hpp"

// Searches turn local information plus an internal state into the scalar
// alpha that the descent consumes, and decide whether the previously proposed
// iterate is committed. They are pure state machines: no evaluation of the
// objective happens here.
namespace modopt::searches {

struct SearchResult {
  double alpha = 1.0;   // scalar handed to the descent for the next proposal
  bool accept = true;   // whether the proposal just evaluated is committed
};

struct ArmijoState {
  double step_size = 1.0;
  bool satisfied = true;
};

struct TrustRegionState {
  double radius = 1.0;
  double ratio = 0.0;
};

/// Constants of the radius update: x c2 above C2, x c1 at or below C1.
struct TrustRegionConstants {
  double low_constant = 0.25;   // c1
  double high_constant = 2.0;   // c2
  double low_cutoff = 0.01;     // C1
  double high_cutoff = 0.99;    // C2

  void validate() const;
};

SearchResult learning_rate(double rate, const FnInfo& info);

/// Backtracking Armijo: accept iff f(x + d) <= f(x) + eta d^T grad f(x).
/// On acceptance the step resets to `step_init`, otherwise it shrinks by `c`.
std::pair<SearchResult, ArmijoState> armijo_step(const FnInfo& info_new, const FnInfo& info_old,
                                                 const Vector& proposed_step, const ArmijoState& state,
                                                 double c, double eta, double step_init = 1.0);

/// Radius update from the ratio of actual to predicted reduction.
std::pair<SearchResult, TrustRegionState> trust_region_update(double actual_reduction,
                                                              double predicted_reduction,
                                                              const TrustRegionState& state,
                                                              const TrustRegionConstants& k);

/// Trust-region search with the quadratic model as predictor. Both
/// reductions get an allowance of 10 eps max(1, |f|) before the ratio is
/// formed when the prediction is positive.
std::pair<SearchResult, TrustRegionState> classical_trust_region_step(const FnInfo& info_new,
                                                                      const FnInfo& info_old,
                                                                      const Vector& proposed_step,
                                                                      const TrustRegionState& state,
                                                                      const TrustRegionConstants& k);

/// Trust-region search with the linear model -grad^T d as predictor.
std::pair<SearchResult, TrustRegionState> linear_trust_region_step(const FnInfo& info_new,
                                                                   const FnInfo& info_old,
                                                                   const Vector& proposed_step,
                                                                   const TrustRegionState& state,
                                                                   const TrustRegionConstants& k);

// Configured search objects, composed into solvers.

struct LearningRate {
  double rate = 1.0;
};

struct BacktrackingArmijo {
  double decrease_factor = 0.5;  // c
  double slope = 1e-4;           // eta
  double step_init = 1.0;
};

struct ClassicalTrustRegion {
  TrustRegionConstants constants;
  double initial_radius = 1.0;
};

struct LinearTrustRegion {
  TrustRegionConstants constants;
  double initial_radius = 1.0;
};

using Search = std::variant<LearningRate, BacktrackingArmijo, ClassicalTrustRegion, LinearTrustRegion>;
using SearchState = std::variant<std::monostate, ArmijoState, TrustRegionState>;

std::string name(const Search& search);

/// Throws ConfigurationError for out-of-range constants.
void validate(const Search& search);

/// True when the search needs a quadratic model (Hessian or residual Jacobian).
bool needs_quadratic_model(const Search& search);

SearchState initial_state(const Search& search);
double initial_alpha(const Search& search);

std::pair<SearchResult, SearchState> step(const Search& search, const FnInfo& info_new, const FnInfo& info_old,
                                          const Vector& proposed_step, const SearchState& state);

}  // namespace modopt::searches
