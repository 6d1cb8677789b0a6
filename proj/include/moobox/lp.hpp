#pragma once

#include <vector>

#include "moobox/types.hpp"

/// Dense linear programming for the descent-direction subproblems.
///
/// The solver is a two-phase primal simplex method with explicit variable
/// bounds (no big-M, bound flips handled natively). Problems here are tiny:
/// a handful of rows, dimension-plus-one columns, so the basis systems are
/// re-solved densely every iteration.
namespace moobox {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// min c.w  subject to  A w <= b,  lo <= w <= hi  (all bounds finite).
struct BoundedLp {
    Vec c;
    Matrix A;  ///< q x p inequality matrix; q may be zero
    Vec b;
    Vec lo;
    Vec hi;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vec w;               ///< meaningful when status == Optimal
    double objective = 0.0;
};

/// Raised when the pivot cap is exceeded; carries the best point visited so
/// callers can degrade gracefully.
class LpIterationLimit : public NumericFailure {
  public:
    LpIterationLimit(const std::string& what, Vec incumbent, double objective, bool feasible)
        : NumericFailure(what),
          incumbent(std::move(incumbent)),
          incumbent_objective(objective),
          incumbent_feasible(feasible) {}

    Vec incumbent;
    double incumbent_objective;
    bool incumbent_feasible;
};

/// Tolerances: pivot eligibility 1e-10, feasibility 1e-9. Bland's rule is
/// engaged after 50 consecutive degenerate pivots and disengaged on the next
/// real step. On Optimal, w is clamped exactly into [lo, hi] and satisfies
/// A w <= b + 1e-9.
LpSolution solve_bounded_lp(const BoundedLp& lp);

/// Solves  min_d max_j (G d)_j  over the box lo <= d <= hi, which requires
/// lo <= 0 <= hi so that d = 0 is always available and the optimum is <= 0.
///
/// Internally: min beta s.t. G d <= beta, with beta confined to
/// [-Theta, 0] where Theta = sum_i max_j |G(j,i)| * max(|lo_i|, |hi_i|)
/// bounds every attainable value of (G d)_j from below.
DirectionResult solve_minimax_box(const Matrix& G, const Vec& lo, const Vec& hi);

}  // namespace moobox
