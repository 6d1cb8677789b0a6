#include "moobox/directions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moobox {

namespace {

// Rows of the Jacobian selected by I, checked for finiteness.
Matrix selected_gradients(const ProblemSpec& p, const Vec& x, const ObjectiveSubset& I) {
    I.check_against(p.m);
    const Matrix J = p.jac(x);
    if (J.rows != static_cast<std::size_t>(p.m) || J.cols != static_cast<std::size_t>(p.n))
        throw NumericFailure("directions: Jacobian has wrong shape");
    Matrix G(I.size(), static_cast<std::size_t>(p.n));
    for (std::size_t k = 0; k < I.size(); ++k)
        for (int i = 0; i < p.n; ++i) {
            const double g = J(static_cast<std::size_t>(I[k]), static_cast<std::size_t>(i));
            if (!std::isfinite(g))
                throw NumericFailure("directions: non-finite gradient entry at query point");
            G(k, static_cast<std::size_t>(i)) = g;
        }
    return G;
}

}  // namespace

DirectionResult steepest_descent(const ProblemSpec& p, const Vec& x, const ObjectiveSubset& I) {
    if (x.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("steepest_descent: point has wrong length");
    const Matrix G = selected_gradients(p, x, I);
    const Vec lo(static_cast<std::size_t>(p.n), -1.0);
    const Vec hi(static_cast<std::size_t>(p.n), 1.0);
    return solve_minimax_box(G, lo, hi);
}

DirectionResult projected_descent(const ProblemSpec& p, const Vec& x, const ObjectiveSubset& I) {
    if (x.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("projected_descent: point has wrong length");
    if (!p.in_bounds(x))
        throw std::invalid_argument("projected_descent: point violates bounds");
    const Matrix G = selected_gradients(p, x, I);
    Vec lo(static_cast<std::size_t>(p.n));
    Vec hi(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        lo[u] = std::max(p.lower[u] - x[u], -1.0);
        hi[u] = std::min(p.upper[u] - x[u], 1.0);
    }
    DirectionResult res = solve_minimax_box(G, lo, hi);
    // The LP already clamps into [lo, hi]; re-assert so x + d stays feasible
    // under exact comparison even if the bounds above were degenerate.
    for (std::size_t i = 0; i < res.d.size(); ++i) res.d[i] = std::clamp(res.d[i], lo[i], hi[i]);
    return res;
}

bool is_eps_pareto_stationary(const ProblemSpec& p, const Vec& x, const ObjectiveSubset& I,
                              double eps) {
    if (eps < 0.0) throw std::invalid_argument("is_eps_pareto_stationary: eps must be nonnegative");
    const double eff = eps == 0.0 ? stationarity_floor : eps;
    return projected_descent(p, x, I).theta >= -eff;
}

}  // namespace moobox
