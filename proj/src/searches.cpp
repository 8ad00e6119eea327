#include "modopt/searches.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modopt/overloaded.hpp"

namespace modopt::searches {

void TrustRegionConstants::validate() const {
  if (!(low_constant > 0.0 && low_constant < 1.0)) throw ConfigurationError("trust region: need 0 < c1 < 1");
  if (!(high_constant > 1.0)) throw ConfigurationError("trust region: need c2 > 1");
  if (!(low_cutoff > 0.0 && low_cutoff < high_cutoff && high_cutoff < 1.0))
    throw ConfigurationError("trust region: need 0 < C1 < C2 < 1");
}

SearchResult learning_rate(double rate, const FnInfo& /*info*/) { return {rate, true}; }

std::pair<SearchResult, ArmijoState> armijo_step(const FnInfo& info_new, const FnInfo& info_old,
                                                 const Vector& proposed_step, const ArmijoState& state,
                                                 double c, double eta, double step_init) {
  if (!info_old.value || !info_old.grad || !info_new.value)
    throw ConfigurationError("armijo: needs f and grad at the old point and f at the new point");
  const double f_new = *info_new.value;
  const double bound = *info_old.value + eta * proposed_step.dot(*info_old.grad);
  const bool satisfied = std::isfinite(f_new) && f_new <= bound;
  const double alpha = satisfied ? step_init : c * state.step_size;
  return {{alpha, satisfied}, {alpha, satisfied}};
}

std::pair<SearchResult, TrustRegionState> trust_region_update(double actual_reduction,
                                                              double predicted_reduction,
                                                              const TrustRegionState& state,
                                                              const TrustRegionConstants& k) {
  TrustRegionState next = state;
  if (!(predicted_reduction > 0.0) || !std::isfinite(actual_reduction)) {
    next.ratio = std::isfinite(actual_reduction) ? 0.0 : -INFINITY;
    next.radius = k.low_constant * state.radius;
    return {{next.radius, false}, next};
  }
  const double ratio = actual_reduction / predicted_reduction;
  next.ratio = ratio;
  if (ratio > k.high_cutoff) {
    next.radius = k.high_constant * state.radius;
  } else if (ratio > k.low_cutoff) {
    next.radius = state.radius;
  } else {
    next.radius = k.low_constant * state.radius;
  }
  return {{next.radius, ratio > k.low_cutoff}, next};
}

namespace {
double actual_reduction(const FnInfo& info_new, const FnInfo& info_old) {
  if (!info_old.value || !info_new.value) throw ConfigurationError("trust region: needs f at both points");
  return *info_old.value - *info_new.value;
}

// Both reductions are shifted by a roundoff allowance so that steps whose
// effect on f is at the level of rounding error give a ratio near 1 instead
// of noise. Non-positive predictions keep the reject rule.
std::pair<SearchResult, TrustRegionState> guarded_update(double actual, double predicted, const FnInfo& info_old,
                                                         const TrustRegionState& state,
                                                         const TrustRegionConstants& k) {
  if (predicted > 0.0 && std::isfinite(actual)) {
    const double allowance = 10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(*info_old.value));
    actual += allowance;
    predicted += allowance;
  }
  return trust_region_update(actual, predicted, state, k);
}
}  // namespace

std::pair<SearchResult, TrustRegionState> classical_trust_region_step(const FnInfo& info_new,
                                                                      const FnInfo& info_old,
                                                                      const Vector& proposed_step,
                                                                      const TrustRegionState& state,
                                                                      const TrustRegionConstants& k) {
  return guarded_update(actual_reduction(info_new, info_old), info_old.model_decrease(proposed_step), info_old,
                        state, k);
}

std::pair<SearchResult, TrustRegionState> linear_trust_region_step(const FnInfo& info_new,
                                                                   const FnInfo& info_old,
                                                                   const Vector& proposed_step,
                                                                   const TrustRegionState& state,
                                                                   const TrustRegionConstants& k) {
  return guarded_update(actual_reduction(info_new, info_old), info_old.linear_decrease(proposed_step), info_old,
                        state, k);
}

std::string name(const Search& search) {
  return std::visit(overloaded{
                        [](const LearningRate&) { return std::string("learning_rate"); },
                        [](const BacktrackingArmijo&) { return std::string("backtracking_armijo"); },
                        [](const ClassicalTrustRegion&) { return std::string("classical_trust_region"); },
                        [](const LinearTrustRegion&) { return std::string("linear_trust_region"); },
                    },
                    search);
}

void validate(const Search& search) {
  std::visit(overloaded{
                 [](const LearningRate& s) {
                   if (!(s.rate > 0.0) || !std::isfinite(s.rate))
                     throw ConfigurationError("learning rate must be positive and finite");
                 },
                 [](const BacktrackingArmijo& s) {
                   if (!(s.decrease_factor > 0.0 && s.decrease_factor <= 1.0))
                     throw ConfigurationError("armijo: decrease factor must lie in (0, 1]");
                   if (!(s.slope > 0.0 && s.slope < 1.0)) throw ConfigurationError("armijo: slope must lie in (0, 1)");
                   if (!(s.step_init > 0.0)) throw ConfigurationError("armijo: initial step must be positive");
                 },
                 [](const ClassicalTrustRegion& s) {
                   s.constants.validate();
                   if (!(s.initial_radius > 0.0)) throw ConfigurationError("trust region: radius must be positive");
                 },
                 [](const LinearTrustRegion& s) {
                   s.constants.validate();
                   if (!(s.initial_radius > 0.0)) throw ConfigurationError("trust region: radius must be positive");
                 },
             },
             search);
}

bool needs_quadratic_model(const Search& search) { return std::holds_alternative<ClassicalTrustRegion>(search); }

SearchState initial_state(const Search& search) {
  return std::visit(overloaded{
                        [](const LearningRate&) -> SearchState { return std::monostate{}; },
                        [](const BacktrackingArmijo& s) -> SearchState { return ArmijoState{s.step_init, true}; },
                        [](const ClassicalTrustRegion& s) -> SearchState {
                          return TrustRegionState{s.initial_radius, 0.0};
                        },
                        [](const LinearTrustRegion& s) -> SearchState {
                          return TrustRegionState{s.initial_radius, 0.0};
                        },
                    },
                    search);
}

double initial_alpha(const Search& search) {
  return std::visit(overloaded{
                        [](const LearningRate& s) { return s.rate; },
                        [](const BacktrackingArmijo& s) { return s.step_init; },
                        [](const ClassicalTrustRegion& s) { return s.initial_radius; },
                        [](const LinearTrustRegion& s) { return s.initial_radius; },
                    },
                    search);
}

std::pair<SearchResult, SearchState> step(const Search& search, const FnInfo& info_new, const FnInfo& info_old,
                                          const Vector& proposed_step, const SearchState& state) {
  return std::visit(
      overloaded{
          [&](const LearningRate& s) -> std::pair<SearchResult, SearchState> {
            return {learning_rate(s.rate, info_old), std::monostate{}};
          },
          [&](const BacktrackingArmijo& s) -> std::pair<SearchResult, SearchState> {
            auto [r, st] = armijo_step(info_new, info_old, proposed_step, std::get<ArmijoState>(state),
                                       s.decrease_factor, s.slope, s.step_init);
            return {r, st};
          },
          [&](const ClassicalTrustRegion& s) -> std::pair<SearchResult, SearchState> {
            auto [r, st] = classical_trust_region_step(info_new, info_old, proposed_step,
                                                       std::get<TrustRegionState>(state), s.constants);
            return {r, st};
          },
          [&](const LinearTrustRegion& s) -> std::pair<SearchResult, SearchState> {
            auto [r, st] = linear_trust_region_step(info_new, info_old, proposed_step,
                                                    std::get<TrustRegionState>(state), s.constants);
            return {r, st};
          },
      },
      search);
}

}  // namespace modopt::searches
