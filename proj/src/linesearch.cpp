#include "moobox/linesearch.hpp"

#include <algorithm>
#include <cmath>

namespace moobox {

namespace {

void check_step_inputs(const ProblemSpec& p, const Individual& x, const Vec& d,
                       const LineSearchParams& params) {
    if (d.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("linesearch: direction has wrong length");
    if (!(params.alpha0 > 0.0) || !(params.delta > 0.0) || !(params.delta < 1.0) ||
        !(params.beta > 0.0) || params.max_halvings < 0)
        throw std::invalid_argument("linesearch: bad parameters");
    (void)x;
}

Vec step_point(const Vec& x, double alpha, const Vec& d) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + alpha * d[i];
    return out;
}

bool all_finite(const Vec& v) {
    for (double t : v)
        if (!std::isfinite(t)) return false;
    return true;
}

// Some y in the front beats the trial with margin beta*alpha*theta on every
// selected objective.
bool front_rejects(std::span<const Individual> front, const ObjectiveSubset& I,
                   const Vec& f_trial, double margin) {
    for (const Individual& y : front) {
        bool all_better = true;
        for (std::size_t k = 0; k < I.size() && all_better; ++k) {
            const auto j = static_cast<std::size_t>(I[k]);
            if (!(y.fx()[j] + margin < f_trial[j])) all_better = false;
        }
        if (all_better) return true;
    }
    return false;
}

// Box membership with a per-coordinate tolerance proportional to the bound
// magnitude. This only forgives accumulated round-off in x + alpha*d for
// directions that are feasible in exact arithmetic; genuinely infeasible
// trial steps overshoot by orders of magnitude more.
bool near_box(const ProblemSpec& p, const Vec& x) {
    for (int i = 0; i < p.n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double tol =
            1e-9 * std::max({1.0, std::fabs(p.lower[u]), std::fabs(p.upper[u])});
        if (x[u] < p.lower[u] - tol || x[u] > p.upper[u] + tol) return false;
    }
    return true;
}

}  // namespace

StepResult als(const ProblemSpec& p, const Individual& x, const Vec& d,
               const LineSearchParams& params) {
    check_step_inputs(p, x, d, params);
    const Matrix J = p.jac(x.x());
    const Vec slope = J.mul(d);

    StepResult res;
    double alpha = params.alpha0;
    for (int h = 0; h <= params.max_halvings; ++h) {
        Vec xt = step_point(x.x(), alpha, d);
        Vec ft = p.eval(xt);
        ++res.evals;
        bool ok = true;
        for (int j = 0; j < p.m && ok; ++j) {
            const auto u = static_cast<std::size_t>(j);
            if (!(ft[u] <= x.fx()[u] + params.beta * alpha * slope[u])) ok = false;
        }
        if (ok) {
            res.alpha = alpha;
            res.halvings = h;
            res.x_new = std::move(xt);
            res.f_new = std::move(ft);
            return res;
        }
        alpha *= params.delta;
    }
    throw LineSearchFailure("als: no step accepted within halving budget",
                            params.max_halvings, res.evals);
}

StepResult fals(const ProblemSpec& p, const ObjectiveSubset& I,
                std::span<const Individual> front, const Individual& x, const Vec& d,
                double theta, const LineSearchParams& params) {
    check_step_inputs(p, x, d, params);
    I.check_against(p.m);
    if (!(theta < 0.0)) throw std::invalid_argument("fals: theta must be negative");

    StepResult res;
    double alpha = params.alpha0;
    for (int h = 0; h <= params.max_halvings; ++h) {
        Vec xt = step_point(x.x(), alpha, d);
        Vec ft = p.eval(xt);
        ++res.evals;
        if (all_finite(ft) && !front_rejects(front, I, ft, params.beta * alpha * theta)) {
            res.alpha = alpha;
            res.halvings = h;
            res.x_new = std::move(xt);
            res.f_new = std::move(ft);
            return res;
        }
        alpha *= params.delta;
    }
    throw LineSearchFailure("fals: no step accepted within halving budget",
                            params.max_halvings, res.evals);
}

StepResult bfals(const ProblemSpec& p, const ObjectiveSubset& I,
                 std::span<const Individual> front, const Individual& x, const Vec& d,
                 double theta, const LineSearchParams& params) {
    check_step_inputs(p, x, d, params);
    I.check_against(p.m);
    if (!(theta < 0.0)) throw std::invalid_argument("bfals: theta must be negative");

    StepResult res;
    double alpha = params.alpha0;
    for (int h = 0; h <= params.max_halvings; ++h) {
        Vec raw = step_point(x.x(), alpha, d);
        if (!near_box(p, raw)) {
            ++res.feasibility_shrinks;
            alpha *= params.delta;
            continue;
        }
        Vec xt = p.clamp(std::move(raw));
        Vec ft = p.eval(xt);
        ++res.evals;
        if (all_finite(ft) && !front_rejects(front, I, ft, params.beta * alpha * theta)) {
            res.alpha = alpha;
            res.halvings = h;
            res.x_new = std::move(xt);
            res.f_new = std::move(ft);
            return res;
        }
        alpha *= params.delta;
    }
    throw LineSearchFailure("bfals: no step accepted within halving budget",
                            params.max_halvings, res.evals);
}

}  // namespace moobox
