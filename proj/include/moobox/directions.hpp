#pragma once

#include "moobox/lp.hpp"
#include "moobox/types.hpp"

/// Steepest-descent direction subproblems for subsets of objectives, in the
/// unconstrained (unit box) and bound-constrained (box intersected with the
/// feasible set) variants. Directions come from the minimax linear program;
/// theta is its optimal value and certifies stationarity when it vanishes.
namespace moobox {

/// Floor applied when a stationarity test is asked for eps = 0, absorbing
/// round-off in the LP value.
inline constexpr double stationarity_floor = 1e-10;

/// Direction minimizing the worst gradient slope over the unit cube
/// -1 <= d_i <= 1, ignoring the feasible box. Throws NumericFailure if any
/// selected gradient entry is non-finite.
DirectionResult steepest_descent(const ProblemSpec& p, const Vec& x, const ObjectiveSubset& I);

/// Same slope minimization but restricted to steps that stay feasible:
/// d_i in [max(lower_i - x_i, -1), min(upper_i - x_i, 1)]. Requires x
/// feasible (throws std::invalid_argument otherwise). The returned d
/// satisfies the step box exactly, so x + d is always feasible.
DirectionResult projected_descent(const ProblemSpec& p, const Vec& x, const ObjectiveSubset& I);

/// True when the constrained subproblem certifies theta >= -eps at x. A zero
/// eps is replaced by stationarity_floor.
bool is_eps_pareto_stationary(const ProblemSpec& p, const Vec& x, const ObjectiveSubset& I,
                              double eps);

}  // namespace moobox
