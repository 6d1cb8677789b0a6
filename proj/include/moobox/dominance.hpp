#pragma once

#include <cstddef>
#include <vector>

#include "moobox/types.hpp"

/// Pareto comparison primitives. All comparisons are exact floating-point
/// comparisons with no tolerance: equal vectors never dominate each other,
/// and duplicate points both survive non-dominated filtering.
namespace moobox {

/// u dominates v: u <= v componentwise and u != v.
bool dominates(const Vec& u, const Vec& v);

/// u strictly dominates v: u < v in every component.
bool strictly_dominates(const Vec& u, const Vec& v);

/// Indices (in input order) of points whose projection onto subset I is not
/// dominated by any other point's projection.
std::vector<std::size_t> nondominated_indices(const std::vector<Vec>& fs,
                                              const ObjectiveSubset& I);

/// Members of `points` whose objective vectors, restricted to I, are not
/// dominated within the set. Input order is preserved.
std::vector<Individual> nondominated_subset(const std::vector<Individual>& points,
                                            const ObjectiveSubset& I);

/// True if no other member of `fs` dominates fs[at] on subset I. Linear scan;
/// cheaper than filtering the whole set when only one membership answer is
/// needed.
bool is_nondominated_at(const std::vector<Vec>& fs, std::size_t at, const ObjectiveSubset& I);

}  // namespace moobox
