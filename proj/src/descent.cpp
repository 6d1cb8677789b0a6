#include "moobox/descent.hpp"

#include <algorithm>
#include <cassert>

#include "moobox/directions.hpp"
#include "moobox/dominance.hpp"
#include "moobox/linesearch.hpp"

namespace moobox {

namespace {

double effective_eps(double eps) { return eps == 0.0 ? stationarity_floor : eps; }

void check_budget(const DescentBudget& b, const char* who) {
    if (b.max_iters < 1)
        throw std::invalid_argument(std::string(who) + ": budget must allow an iteration");
    if (b.eps < 0.0)
        throw std::invalid_argument(std::string(who) + ": eps must be nonnegative");
}

}  // namespace

std::vector<ObjectiveSubset> all_objective_subsets(int m) {
    if (m <= 0) throw std::invalid_argument("all_objective_subsets: m must be positive");
    std::vector<ObjectiveSubset> out;
    for (int card = m; card >= 1; --card) {
        // Lexicographically first combination of this cardinality, then
        // successor stepping.
        std::vector<int> comb(static_cast<std::size_t>(card));
        for (int i = 0; i < card; ++i) comb[static_cast<std::size_t>(i)] = i;
        while (true) {
            out.emplace_back(comb);
            int i = card - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == m - card + i) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < card; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

std::optional<DirectionResult> try_direction(const ProblemSpec& p, const Vec& x,
                                             const ObjectiveSubset& I) {
    try {
        return projected_descent(p, x, I);
    } catch (const NumericFailure&) {
        return std::nullopt;
    }
}

Individual mopg(const ProblemSpec& p, const Individual& x0, const DescentBudget& budget,
                const IterationSink& sink) {
    check_budget(budget, "mopg");
    const ObjectiveSubset I = ObjectiveSubset::full(p.m);
    const double eps = effective_eps(budget.eps);
    Individual cur = x0;
    for (int k = 0; k < budget.max_iters; ++k) {
        if (budget.expired()) break;
        const auto dir = try_direction(p, cur.x(), I);
        if (!dir || dir->theta >= -eps) break;
        StepResult step;
        try {
            step = als(p, cur, dir->d);
        } catch (const LineSearchFailure& e) {
            throw MopgFailure(std::string("mopg: ") + e.what(), cur);
        }
        // The projected direction keeps x + alpha*d inside the box up to
        // round-off; project back and refresh the cache if that moved it.
        Vec xc = p.clamp(step.x_new);
        cur = xc == step.x_new ? Individual(p, std::move(xc), std::move(step.f_new))
                               : Individual(p, std::move(xc));
        if (sink) sink({k, dir->theta, step.alpha, cur.x()});
    }
    return cur;
}

std::vector<Individual> fmopg(const ProblemSpec& p, const ObjectiveSubset& I,
                              const std::vector<Individual>& X0, const Individual& x0,
                              const DescentBudget& budget, const IterationSink& sink) {
    check_budget(budget, "fmopg");
    I.check_against(p.m);
    if (X0.empty()) throw std::invalid_argument("fmopg: starting set is empty");

    std::vector<Vec> fs;
    fs.reserve(X0.size());
    for (const auto& y : X0) fs.push_back(y.fx());
    std::size_t at = X0.size();
    for (std::size_t i = 0; i < X0.size(); ++i)
        if (X0[i].same_decision(x0)) {
            at = i;
            break;
        }
    if (at == X0.size())
        throw std::invalid_argument("fmopg: starting point is not a member of the set");
    if (!is_nondominated_at(fs, at, I))
        throw std::invalid_argument("fmopg: starting point is dominated within the set");

    const double eps = effective_eps(budget.eps);
    std::vector<Individual> X = X0;
    Individual cur = x0;
    std::vector<Individual> seq;
    // The subset-non-dominated slice of the accumulated set, maintained
    // incrementally: each accepted step is non-dominated against it by the
    // line search's own acceptance test, so insertion can only evict current
    // slice members. A full refilter per iteration gives the same set at
    // quadratic cost, which dominates the runtime of long descents.
    std::vector<Individual> front = nondominated_subset(X, I);
    const auto subset_dominates = [&I](const Vec& a, const Vec& b) {
        bool strict = false;
        for (std::size_t k = 0; k < I.size(); ++k) {
            const auto j = static_cast<std::size_t>(I[k]);
            if (a[j] > b[j]) return false;
            if (a[j] < b[j]) strict = true;
        }
        return strict;
    };
    for (int k = 0; k < budget.max_iters; ++k) {
        if (budget.expired()) break;
        const auto dir = try_direction(p, cur.x(), I);
        if (!dir || dir->theta >= -eps) break;
        StepResult step;
        try {
            step = bfals(p, I, front, cur, dir->d, dir->theta);
        } catch (const LineSearchFailure&) {
            break;  // keep what was produced so far
        }
        Individual next(p, std::move(step.x_new), std::move(step.f_new));
        assert(std::none_of(X.begin(), X.end(),
                            [&](const Individual& y) { return y.same_decision(next); }));
        seq.push_back(next);
        X.push_back(next);
        std::erase_if(front, [&](const Individual& y) {
            return subset_dominates(next.fx(), y.fx());
        });
        front.push_back(next);
        cur = std::move(next);
        if (sink) sink({k, dir->theta, step.alpha, cur.x()});
    }
    return seq;
}

std::vector<Individual> fpga(const ProblemSpec& p, const std::vector<Individual>& X0,
                             const DescentBudget& budget, const IterationSink& sink) {
    check_budget(budget, "fpga");
    if (X0.empty()) throw std::invalid_argument("fpga: starting set is empty");
    {
        std::vector<Vec> fs0;
        fs0.reserve(X0.size());
        for (const auto& y : X0) fs0.push_back(y.fx());
        const ObjectiveSubset full = ObjectiveSubset::full(p.m);
        if (nondominated_indices(fs0, full).size() != X0.size())
            throw std::invalid_argument("fpga: starting set must be mutually non-dominated");
    }

    const double eps = effective_eps(budget.eps);
    const std::vector<ObjectiveSubset> subsets = all_objective_subsets(p.m);

    std::vector<Individual> X = X0;
    std::vector<Vec> fs;
    fs.reserve(X.size());
    for (const auto& y : X) fs.push_back(y.fx());

    int accepted_total = 0;
    for (int sweep = 0; sweep < budget.max_iters; ++sweep) {
        if (budget.expired()) break;
        const std::vector<Individual> snapshot = X;
        int accepted = 0;
        for (const Individual& cand : snapshot) {
            if (budget.expired()) break;
            // The candidate may have been evicted by an earlier insertion.
            std::size_t at = X.size();
            for (std::size_t i = 0; i < X.size(); ++i)
                if (X[i].same_decision(cand)) {
                    at = i;
                    break;
                }
            if (at == X.size()) continue;

            for (const ObjectiveSubset& I : subsets) {
                if (!is_nondominated_at(fs, at, I)) continue;
                const auto dir = try_direction(p, cand.x(), I);
                if (!dir || dir->theta >= -eps) continue;
                std::vector<Individual> front;
                for (std::size_t i : nondominated_indices(fs, I)) front.push_back(X[i]);
                StepResult step;
                try {
                    step = bfals(p, I, front, cand, dir->d, dir->theta);
                } catch (const LineSearchFailure&) {
                    break;  // this point keeps its place; move to the next one
                }
                Individual next(p, std::move(step.x_new), std::move(step.f_new));
                // Evict everything the new point dominates, then insert it.
                std::size_t w = 0;
                for (std::size_t r = 0; r < X.size(); ++r) {
                    if (dominates(next.fx(), fs[r])) continue;
                    if (w != r) {
                        X[w] = std::move(X[r]);
                        fs[w] = std::move(fs[r]);
                    }
                    ++w;
                }
                X.erase(X.begin() + static_cast<std::ptrdiff_t>(w), X.end());
                fs.resize(w);
                fs.push_back(next.fx());
                X.push_back(std::move(next));
                ++accepted;
                if (sink) sink({accepted_total++, dir->theta, step.alpha, X.back().x()});
                break;  // one refinement per point per sweep
            }
        }
        if (accepted == 0) break;  // every surviving point is stationary for every subset
    }
    return X;
}

}  // namespace moobox
