#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "moobox/descent.hpp"
#include "moobox/genetic.hpp"

/// The memetic solver: the elitist generational loop with genetic variation
/// confined to surrogate bounds around the current population, plus periodic
/// gradient-based refinement of promising rank-0 members through the
/// front-accumulating descent solver.
namespace moobox {

struct NsmaParams {
    GeneticParams genetic{};
    double shift = 10.0;     ///< surrogate-bound margin around the population
    double quantile = 0.9;   ///< crowding-threshold quantile
    int n_opt = 5;           ///< refinement period in generations
    /// Refinement tolerance schedule eps_t = max(floor, eps0 * decay^t),
    /// advanced once per refinement pass.
    double eps0 = 1e-2;
    double eps_decay = 0.5;
    double eps_floor = 1e-7;
    int local_max_iters = 200;  ///< per-refinement iteration cap for fmopg

    double eps_at(int t) const {
        return std::max(eps_floor, eps0 * std::pow(eps_decay, static_cast<double>(t)));
    }
};

/// Per-generation trace record.
struct GenerationTrace {
    std::int64_t generation = 0;
    std::vector<Vec> objectives;  ///< objective vectors of the surviving population
    double crowding_threshold = 0.0;
    int local_searches = 0;
    double eps = 0.0;
};
using GenerationSink = std::function<void(const GenerationTrace&)>;

/// Box obtained by padding the population's componentwise extent by `shift`
/// and intersecting with the original bounds. Empty populations are
/// rejected.
std::pair<Vec, Vec> get_surrogate_bounds(const std::vector<Individual>& pop, const Vec& lower,
                                         const Vec& upper, double shift);

/// The q-th lower nearest-rank quantile of the finite crowding distances of
/// the rank-0 members: the ceil(q*K)-th smallest of K values. Returns
/// +infinity when every rank-0 member has infinite crowding, which makes the
/// threshold gate pass exactly the infinite-crowding members.
double get_crowding_distance_threshold(const RankedPopulation& rp, double q);

/// One refinement pass: every rank-0 member with crowding >= c_bar is tested
/// against each objective subset in scan order; when it is subset
/// non-dominated within the accumulated set and not eps_t-stationary, an
/// fmopg run is launched and its sequence joins the set. The pass ends with
/// metrics and truncation back to `capacity`. Failures inside one (point,
/// subset) pair skip that pair only. `launched` (optional) receives the
/// number of descent runs started.
RankedPopulation optimize_population(const ProblemSpec& p, const RankedPopulation& rp,
                                     double c_bar, double eps_t, int capacity,
                                     const DescentBudget& local, int* launched = nullptr);

/// The full solver loop. Generation k: parents, surrogate bounds, crossover
/// and mutation inside them, merge, metrics, crowding threshold from the
/// merged set, truncation, and a refinement pass with the current eps_t on
/// generations n_opt, 2*n_opt, ... (so a run shorter than n_opt generations
/// never refines). Budget is re-checked at generation boundaries and between
/// refinement pairs.
std::vector<Individual> nsma_run(const ProblemSpec& p, const std::vector<Individual>& X0,
                                 const NsmaParams& params, const GenerationBudget& budget,
                                 CounterRng& rng, const GenerationSink& sink = {});

}  // namespace moobox
