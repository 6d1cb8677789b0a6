#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moobox/types.hpp"

namespace moobox {

// A labeled set of objective vectors, as produced by one solver on one problem.
struct FrontSet {
    std::string label;
    std::vector<Vec> points;
};

// Union of all fronts with every dominated point removed and exact duplicates
// kept once (first occurrence wins). Throws std::invalid_argument when fronts
// is empty or the vectors disagree on length.
FrontSet reference_front(const std::vector<FrontSet>& fronts);

// Number of front points that no reference point dominates.
std::size_t nd_points(const FrontSet& front, const FrontSet& reference);

// nd_points / |front|. Empty front has no defined purity.
std::optional<double> purity(const FrontSet& front, const FrontSet& reference);

// Largest l-inf distance between consecutive points of the front sorted by the
// first objective, with the reference front's per-objective best points glued
// on as virtual extremes. Biobjective only; empty front or reference yields
// no value.
std::optional<double> gamma_spread(const FrontSet& front, const FrontSet& reference);

// Deviation-from-uniformity of the consecutive l-inf gaps:
//   (d0 + dN + sum_i |d_i - dbar|) / (d0 + dN + (N-1)*dbar)
// where d0 and dN are the gaps to the reference extremes and dbar is the mean
// internal gap. Needs at least two front points; a zero denominator gives 0.
std::optional<double> delta_spread(const FrontSet& front, const FrontSet& reference);

// One (problem, n, solver) cell of a benchmark result table. Metric fields are
// empty when the run failed or the metric is undefined for that front.
struct MetricRow {
    std::string problem;
    int n = 0;
    std::string solver;
    std::optional<double> purity;
    std::optional<double> gamma;
    std::optional<double> delta;
    std::optional<std::uint64_t> nd_points;
    std::uint64_t front_size = 0;
    double wall_seconds = 0.0;
    std::uint64_t evals = 0;
};

struct MetricTable {
    std::vector<MetricRow> rows;
};

// CSV header: problem,n,solver,purity,gamma,delta,nd_points,front_size,
// wall_seconds,evals. Missing values are written as NA. Doubles round-trip
// exactly (shortest representation that parses back to the same bits).
std::string to_csv(const MetricTable& table);
MetricTable metric_table_from_csv(const std::string& text);

// A problem instance as it appears in a table: family name plus dimension.
struct ProblemKey {
    std::string problem;
    int n = 0;

    friend bool operator==(const ProblemKey& a, const ProblemKey& b) {
        return a.problem == b.problem && a.n == b.n;
    }
    friend bool operator<(const ProblemKey& a, const ProblemKey& b) {
        if (a.problem != b.problem) return a.problem < b.problem;
        return a.n < b.n;
    }
};

struct ProfileSample {
    double tau = 0.0;
    double rho = 0.0;
};

struct ProfileCurve {
    std::string solver;
    std::vector<ProfileSample> samples;
};

struct ProfileResult {
    std::vector<ProfileCurve> curves;
    // Instances where no solver produced a usable score; dropped from the
    // denominator. Callers should surface these as warnings.
    std::vector<ProblemKey> excluded;
};

// Dolan-More performance profile of one metric over a solver/problem grid.
// Scores are cost-like: gamma and delta are used directly, purity and
// nd_points are inverted (t = 1/value). A zero or missing value is an
// infinite cost and is never counted as solved. Ratios are taken against the
// per-instance best cost; when the best cost is itself 0, solvers matching it
// get ratio 1 and everyone else is unsolved. Curves are sampled at every
// finite ratio plus tau = 1, on a grid shared by all solvers.
// metric must be one of purity, gamma, delta, nd_points.
ProfileResult performance_profile(const MetricTable& table, const std::string& metric,
                                  const std::vector<std::string>& solvers,
                                  const std::vector<ProblemKey>& problems);

// Convenience overload: solvers and problem instances are the sorted distinct
// values found in the table.
ProfileResult performance_profile(const MetricTable& table, const std::string& metric);

// CSV header: solver,tau,rho.
std::string to_csv(const ProfileResult& profile);

}  // namespace moobox
