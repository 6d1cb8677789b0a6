#include "moobox/dominance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace moobox {

bool dominates(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("dominates: objective vectors differ in length");
    bool any_strict = false;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] > v[j]) return false;
        if (u[j] < v[j]) any_strict = true;
    }
    return any_strict;
}

bool strictly_dominates(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("strictly_dominates: objective vectors differ in length");
    for (std::size_t j = 0; j < u.size(); ++j)
        if (!(u[j] < v[j])) return false;
    return true;
}

namespace {

// Projected dominance without materializing the projections.
bool dominates_on(const Vec& u, const Vec& v, const ObjectiveSubset& I) {
    bool any_strict = false;
    for (std::size_t k = 0; k < I.size(); ++k) {
        const auto j = static_cast<std::size_t>(I[k]);
        if (u[j] > v[j]) return false;
        if (u[j] < v[j]) any_strict = true;
    }
    return any_strict;
}

// Two-objective filter in O(N log N): sort by (f_a, f_b), then sweep groups of
// equal f_a. A point survives iff its f_b equals its group minimum and that
// minimum strictly improves on everything seen at smaller f_a.
std::vector<std::size_t> filter_two(const std::vector<Vec>& fs, std::size_t a, std::size_t b) {
    const std::size_t n = fs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (fs[i][a] != fs[j][a]) return fs[i][a] < fs[j][a];
        return fs[i][b] < fs[j][b];
    });

    std::vector<std::size_t> keep;
    keep.reserve(n);
    double best_b = std::numeric_limits<double>::infinity();
    std::size_t g = 0;
    while (g < n) {
        std::size_t h = g;
        while (h < n && fs[order[h]][a] == fs[order[g]][a]) ++h;
        const double group_min = fs[order[g]][b];  // sorted, so first entry is minimal
        if (group_min < best_b) {
            for (std::size_t k = g; k < h && fs[order[k]][b] == group_min; ++k)
                keep.push_back(order[k]);
            best_b = group_min;
        }
        g = h;
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace

std::vector<std::size_t> nondominated_indices(const std::vector<Vec>& fs,
                                              const ObjectiveSubset& I) {
    if (fs.empty()) return {};
    for (const auto& f : fs)
        if (static_cast<std::size_t>(I[I.size() - 1]) >= f.size())
            throw std::invalid_argument("nondominated_indices: subset index out of range");

    if (I.size() == 2)
        return filter_two(fs, static_cast<std::size_t>(I[0]), static_cast<std::size_t>(I[1]));

    if (I.size() == 1) {
        const auto j = static_cast<std::size_t>(I[0]);
        double best = fs[0][j];
        for (const auto& f : fs) best = std::min(best, f[j]);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (fs[i][j] == best) keep.push_back(i);
        return keep;
    }

    // General all-pairs scan.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        bool dominated = false;
        for (std::size_t k = 0; k < fs.size() && !dominated; ++k)
            if (k != i && dominates_on(fs[k], fs[i], I)) dominated = true;
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

std::vector<Individual> nondominated_subset(const std::vector<Individual>& points,
                                            const ObjectiveSubset& I) {
    std::vector<Vec> fs;
    fs.reserve(points.size());
    for (const auto& p : points) fs.push_back(p.fx());
    std::vector<Individual> out;
    for (std::size_t i : nondominated_indices(fs, I)) out.push_back(points[i]);
    return out;
}

bool is_nondominated_at(const std::vector<Vec>& fs, std::size_t at, const ObjectiveSubset& I) {
    for (std::size_t k = 0; k < fs.size(); ++k)
        if (k != at && dominates_on(fs[k], fs[at], I)) return false;
    return true;
}

}  // namespace moobox
