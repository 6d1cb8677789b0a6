#include "moobox/nsma.hpp"

#include <algorithm>
#include <limits>

#include "moobox/dominance.hpp"

namespace moobox {

std::pair<Vec, Vec> get_surrogate_bounds(const std::vector<Individual>& pop, const Vec& lower,
                                         const Vec& upper, double shift) {
    if (pop.empty()) throw std::invalid_argument("get_surrogate_bounds: empty population");
    if (shift < 0.0) throw std::invalid_argument("get_surrogate_bounds: negative shift");
    const std::size_t n = lower.size();
    Vec lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        double mn = pop[0].x()[i], mx = pop[0].x()[i];
        for (const auto& ind : pop) {
            mn = std::min(mn, ind.x()[i]);
            mx = std::max(mx, ind.x()[i]);
        }
        lo[i] = std::max(lower[i], mn - shift);
        hi[i] = std::min(upper[i], mx + shift);
    }
    return {std::move(lo), std::move(hi)};
}

double get_crowding_distance_threshold(const RankedPopulation& rp, double q) {
    if (q < 0.0 || q > 1.0)
        throw std::invalid_argument("get_crowding_distance_threshold: q outside [0, 1]");
    Vec finite;
    for (std::size_t i = 0; i < rp.size(); ++i)
        if (rp.rank[i] == 0 && std::isfinite(rp.crowding[i])) finite.push_back(rp.crowding[i]);
    if (finite.empty()) return std::numeric_limits<double>::infinity();
    std::sort(finite.begin(), finite.end());
    // Lower nearest-rank quantile: the ceil(q*K)-th smallest, 1-based.
    auto pos = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(finite.size())));
    pos = std::clamp<std::size_t>(pos, 1, finite.size());
    return finite[pos - 1];
}

RankedPopulation optimize_population(const ProblemSpec& p, const RankedPopulation& rp,
                                     double c_bar, double eps_t, int capacity,
                                     const DescentBudget& local, int* launched) {
    if (rp.size() == 0) throw std::invalid_argument("optimize_population: empty population");
    if (launched) *launched = 0;

    std::vector<Individual> accumulated = rp.members;
    std::vector<Vec> fs;
    fs.reserve(accumulated.size());
    for (const auto& ind : accumulated) fs.push_back(ind.fx());

    const std::vector<ObjectiveSubset> subsets = all_objective_subsets(p.m);
    // The subset slices are refiltered whenever a refinement lands; between
    // insertions the accumulated set is unchanged and the cached filter for a
    // subset stays valid, which matters because the filter is quadratic.
    std::vector<std::vector<std::size_t>> slice(subsets.size());
    std::vector<std::size_t> slice_version(subsets.size(), fs.size() + 1);
    bool out_of_time = false;
    for (std::size_t idx = 0; idx < rp.size() && !out_of_time; ++idx) {
        if (rp.rank[idx] != 0) continue;
        if (!(rp.crowding[idx] >= c_bar)) continue;
        for (std::size_t si = 0; si < subsets.size(); ++si) {
            const ObjectiveSubset& I = subsets[si];
            if (local.expired()) {
                out_of_time = true;
                break;
            }
            // Membership in the subset-non-dominated slice of the accumulated
            // set, which grows as refinements land.
            if (!is_nondominated_at(fs, idx, I)) continue;
            const auto dir = try_direction(p, accumulated[idx].x(), I);
            if (!dir || dir->theta >= -eps_t) continue;

            if (slice_version[si] != fs.size()) {
                slice[si] = nondominated_indices(fs, I);
                slice_version[si] = fs.size();
            }
            std::vector<Individual> front;
            for (std::size_t i : slice[si]) front.push_back(accumulated[i]);
            DescentBudget budget = local;
            budget.eps = eps_t;
            try {
                const std::vector<Individual> seq =
                    fmopg(p, I, front, accumulated[idx], budget);
                if (launched) ++*launched;
                for (const auto& s : seq) {
                    fs.push_back(s.fx());
                    accumulated.push_back(s);
                }
            } catch (const std::exception&) {
                // a failed refinement leaves the accumulated set untouched
            }
        }
    }
    // Nothing inserted: truncate the existing ranking directly instead of
    // re-deriving identical metrics over the very same members.
    if (accumulated.size() == rp.size()) return get_survivors(rp, capacity);
    return get_survivors(get_metrics(std::move(accumulated)), capacity);
}

std::vector<Individual> nsma_run(const ProblemSpec& p, const std::vector<Individual>& X0,
                                 const NsmaParams& params, const GenerationBudget& budget,
                                 CounterRng& rng, const GenerationSink& sink) {
    if (X0.empty()) throw std::invalid_argument("nsma_run: empty initial population");
    const int N = params.genetic.pop_size;
    RankedPopulation rp = get_survivors(get_metrics(X0), N);

    int t = 0;
    for (std::int64_t gen = 0; !budget.exhausted(gen); ++gen) {
        const std::vector<Individual> parents = get_parents(rp, N, rng);
        const auto [lo_s, hi_s] =
            get_surrogate_bounds(rp.members, p.lower, p.upper, params.shift);
        std::vector<Vec> off = crossover(parents, lo_s, hi_s, params.genetic, rng);
        std::vector<Vec> current;
        current.reserve(rp.size());
        for (const auto& ind : rp.members) current.push_back(ind.x());
        off = mutation(std::move(off), lo_s, hi_s, params.genetic, rng, current);

        std::vector<Individual> merged = rp.members;
        merged.reserve(merged.size() + off.size());
        for (auto& v : off) merged.emplace_back(p, std::move(v));
        RankedPopulation mixed = get_metrics(std::move(merged));
        const double c_bar = get_crowding_distance_threshold(mixed, params.quantile);
        rp = get_survivors(mixed, N);

        int launched = 0;
        double eps_t = params.eps_at(t);
        if ((gen + 1) % params.n_opt == 0) {
            DescentBudget local;
            local.max_iters = params.local_max_iters;
            local.eps = eps_t;
            local.deadline = budget.deadline;
            rp = optimize_population(p, rp, c_bar, eps_t, N, local, &launched);
            ++t;
        }
        if (sink) {
            GenerationTrace trace;
            trace.generation = gen;
            trace.objectives.reserve(rp.size());
            for (const auto& ind : rp.members) trace.objectives.push_back(ind.fx());
            trace.crowding_threshold = c_bar;
            trace.local_searches = launched;
            trace.eps = eps_t;
            sink(trace);
        }
    }
    return rp.members;
}

}  // namespace moobox
