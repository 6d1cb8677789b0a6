#pragma once

#include <span>

#include "moobox/types.hpp"

/// Backtracking line searches. All three variants start from alpha0 and halve
/// by factor delta, so an accepted step length is always delta^h * alpha0 for
/// the number of shrinks h taken, with no other mutation of alpha. The
/// objective vector is evaluated exactly once per trial step and reused for
/// every comparison at that step.
namespace moobox {

struct LineSearchParams {
    double alpha0 = 1.0;
    double delta = 0.5;   ///< shrink factor per rejection
    double beta = 1e-4;   ///< sufficient-decrease margin coefficient
    int max_halvings = 60;
};

struct StepResult {
    double alpha = 0.0;
    Vec x_new;  ///< accepted point (feasible for the bounded variant)
    Vec f_new;  ///< objectives at x_new, the same values used by the guard
    int evals = 0;
    int halvings = 0;
    int feasibility_shrinks = 0;  ///< rejections caused by the box guard alone
};

/// Raised when every trial step up to max_halvings is rejected.
class LineSearchFailure : public std::runtime_error {
  public:
    LineSearchFailure(const std::string& what, int halvings, int evals)
        : std::runtime_error(what), halvings(halvings), evals(evals) {}
    int halvings;
    int evals;
};

/// Armijo backtracking on all objectives at once: accepts alpha when
/// F(x + alpha d) <= F(x) + beta * alpha * J(x) d componentwise. Descent of
/// every objective along d is the caller's responsibility; without it the
/// search exhausts its halvings and throws.
StepResult als(const ProblemSpec& p, const Individual& x, const Vec& d,
               const LineSearchParams& params = {});

/// Front-relative backtracking restricted to objective subset I: a trial is
/// rejected while some y in `front` satisfies
///   F_I(y) + beta * alpha * theta < F_I(x + alpha d)  strictly componentwise.
/// `front` is the current non-dominated set for I and conventionally contains
/// x itself; theta must be negative. Trial points with non-finite objectives
/// are rejected the same way.
StepResult fals(const ProblemSpec& p, const ObjectiveSubset& I,
                std::span<const Individual> front, const Individual& x, const Vec& d,
                double theta, const LineSearchParams& params = {});

/// Bound-constrained variant of fals: each trial first passes a feasibility
/// gate (objectives are never evaluated at points outside the box), then the
/// front comparison. The accepted point is projected exactly onto the box,
/// which only ever moves it by accumulated round-off.
StepResult bfals(const ProblemSpec& p, const ObjectiveSubset& I,
                 std::span<const Individual> front, const Individual& x, const Vec& d,
                 double theta, const LineSearchParams& params = {});

}  // namespace moobox
