#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "moobox/types.hpp"

/// Gradient-based multi-objective solvers built on the projected descent
/// direction and the backtracking line searches: single-point descent (mopg),
/// front-accumulating descent for one objective subset (fmopg), and the
/// front-sweeping solver that cycles every point over every subset (fpga).
namespace moobox {

struct DescentBudget {
    int max_iters = 1000;  ///< iterations for mopg/fmopg, full sweeps for fpga
    double eps = 0.0;      ///< stationarity tolerance; 0 means the floor 1e-10
    std::optional<std::chrono::steady_clock::time_point> deadline;

    bool expired() const {
        return deadline && std::chrono::steady_clock::now() >= *deadline;
    }
};

/// Per-step trace record, emitted after each accepted line search.
struct IterationTrace {
    int iter = 0;
    double theta = 0.0;
    double alpha = 0.0;
    Vec x;
};
using IterationSink = std::function<void(const IterationTrace&)>;

/// Raised by mopg when a line search fails; carries the last iterate so the
/// caller keeps the progress made.
class MopgFailure : public std::runtime_error {
  public:
    MopgFailure(const std::string& what, Individual last)
        : std::runtime_error(what), last_iterate(std::move(last)) {}
    Individual last_iterate;
};

/// All nonempty subsets of {0, ..., m-1} in scan order: the full set first,
/// then decreasing cardinality, lexicographic within equal cardinality.
std::vector<ObjectiveSubset> all_objective_subsets(int m);

/// Constrained direction at x, with points whose selected gradients are not
/// finite reported as nullopt and treated as stationary by the solvers
/// (the convention for singular points).
std::optional<DirectionResult> try_direction(const ProblemSpec& p, const Vec& x,
                                             const ObjectiveSubset& I);

/// Projected descent on all objectives from a single point until
/// eps-stationarity or budget exhaustion. Step lengths come from the Armijo
/// search with alpha0 = 1, so every iterate stays feasible.
Individual mopg(const ProblemSpec& p, const Individual& x0, const DescentBudget& budget,
                const IterationSink& sink = {});

/// Front-accumulating descent for one objective subset. Starting from x0,
/// which must belong to X0 and be non-dominated in it w.r.t. the subset
/// (std::invalid_argument otherwise), produces the sequence of accepted
/// iterates; x0 itself is not part of the return value. The internal set
/// grows by exactly one point per iteration. A failed line search ends the
/// run and the sequence so far is returned.
std::vector<Individual> fmopg(const ProblemSpec& p, const ObjectiveSubset& I,
                              const std::vector<Individual>& X0, const Individual& x0,
                              const DescentBudget& budget, const IterationSink& sink = {});

/// Front sweep: repeatedly passes over the current set; each still-present
/// point is refined along the first subset (in scan order) for which it is
/// subset-non-dominated and not stationary. An accepted step inserts the new
/// point and evicts the members it dominates. Runs are deterministic; no
/// random state is consumed. X0 must be feasible and mutually non-dominated.
/// Stops on deadline, sweep cap, or a full sweep with no accepted step.
std::vector<Individual> fpga(const ProblemSpec& p, const std::vector<Individual>& X0,
                             const DescentBudget& budget, const IterationSink& sink = {});

}  // namespace moobox
