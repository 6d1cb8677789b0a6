#include <doctest/doctest.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "moobox/nsma.hpp"
#include "moobox/problems.hpp"
#include "moobox/rng.hpp"
#include "moobox/types.hpp"
#include "oracles.hpp"
#include "support.hpp"

using moobox::CounterRng;
using moobox::DescentBudget;
using moobox::GenerationBudget;
using moobox::GenerationTrace;
using moobox::Individual;
using moobox::NsmaParams;
using moobox::RankedPopulation;
using moobox::Vec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RankedPopulation ranked(const std::vector<Vec>& fs, std::vector<int> rank,
                        std::vector<double> crowding) {
    const auto p = testsup::identity_problem((int)fs[0].size());
    RankedPopulation rp;
    rp.members = testsup::points_of(p, fs);
    rp.rank = std::move(rank);
    rp.crowding = std::move(crowding);
    return rp;
}

}  // namespace

TEST_CASE("surrogate bounds pad the population extent and clip to the box") {
    const auto p = testsup::identity_problem(2, -10.0, 10.0);
    const auto pop = testsup::points_of(p, {{0.0, 0.0}, {2.0, 3.0}});

    const auto [lo1, hi1] = moobox::get_surrogate_bounds(pop, p.lower, p.upper, 1.0);
    CHECK(lo1 == Vec{-1.0, -1.0});
    CHECK(hi1 == Vec{3.0, 4.0});

    const auto [lo2, hi2] = moobox::get_surrogate_bounds(pop, p.lower, p.upper, 1e4);
    CHECK(lo2 == p.lower);
    CHECK(hi2 == p.upper);

    const auto single = testsup::points_of(p, {{5.0, 5.0}});
    const auto [lo3, hi3] = moobox::get_surrogate_bounds(single, p.lower, p.upper, 0.0);
    CHECK(lo3 == Vec{5.0, 5.0});
    CHECK(hi3 == Vec{5.0, 5.0});

    CHECK_THROWS_AS(moobox::get_surrogate_bounds({}, p.lower, p.upper, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(moobox::get_surrogate_bounds(pop, p.lower, p.upper, -0.5),
                    std::invalid_argument);
}

TEST_CASE("crowding threshold takes the lower nearest-rank quantile") {
    const auto rp = ranked({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, {0, 0, 0, 0}, {1.0, 2.0, 3.0, 4.0});
    CHECK(moobox::get_crowding_distance_threshold(rp, 0.5) == 2.0);
    CHECK(moobox::get_crowding_distance_threshold(rp, 0.9) == 4.0);
    CHECK(moobox::get_crowding_distance_threshold(rp, 1.0) == 4.0);
    CHECK(moobox::get_crowding_distance_threshold(rp, 0.0) == 1.0);

    const auto one = ranked({{0, 0}}, {0}, {0.1});
    CHECK(moobox::get_crowding_distance_threshold(one, 0.9) == 0.1);

    // Infinite entries do not participate; rank-1 members never do.
    const auto mixed = ranked({{0, 0}, {1, 1}, {2, 2}}, {0, 0, 1}, {kInf, 0.5, 0.2});
    CHECK(moobox::get_crowding_distance_threshold(mixed, 0.9) == 0.5);

    const auto allinf = ranked({{0, 0}, {1, 1}}, {0, 0}, {kInf, kInf});
    CHECK(moobox::get_crowding_distance_threshold(allinf, 0.9) == kInf);

    CHECK_THROWS_AS(moobox::get_crowding_distance_threshold(rp, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(moobox::get_crowding_distance_threshold(rp, 1.5), std::invalid_argument);
}

TEST_CASE("refinement leaves an already-converged population alone") {
    DescentBudget local;
    local.max_iters = 50;

    // An infinite threshold with no infinite-crowding member gates everyone
    // out, so no descent is launched.
    const auto p = testsup::parabola_pair();
    RankedPopulation rp;
    rp.members = testsup::points_of(p, {{0.5}, {1.5}});
    rp.rank = {0, 0};
    rp.crowding = {1.0, 2.0};
    int launched = -1;
    const auto out = moobox::optimize_population(p, rp, kInf, 1e-6, 2, local, &launched);
    CHECK(launched == 0);
    REQUIRE(out.size() == 2);
    // Nothing was refined, so the survivors are the incoming ranking
    // truncated as-is: same members, reordered by the crowding they
    // arrived with, roomiest first.
    CHECK(out.members[0].x() == rp.members[1].x());
    CHECK(out.members[1].x() == rp.members[0].x());
    const std::vector<double> kept = {2.0, 1.0};
    CHECK(out.crowding == kept);

    // The two single-objective minimizers are stationary for every subset
    // they are non-dominated on, so even a permissive gate launches nothing.
    RankedPopulation corners;
    corners.members = testsup::points_of(p, {{0.0}, {2.0}});
    corners.rank = {0, 0};
    corners.crowding = {kInf, kInf};
    launched = -1;
    const auto still = moobox::optimize_population(p, corners, 0.0, 1e-6, 2, local, &launched);
    CHECK(launched == 0);
    REQUIRE(still.size() == 2);
    CHECK(still.members[0].x() == Vec{0.0});
    CHECK(still.members[1].x() == Vec{2.0});
}

TEST_CASE("refinement pulls a dominated-region point onto the efficient set") {
    const auto p = testsup::parabola_pair();
    RankedPopulation rp;
    rp.members = testsup::points_of(p, {{3.0}});
    rp.rank = {0};
    rp.crowding = {kInf};
    DescentBudget local;
    local.max_iters = 50;
    int launched = 0;
    const auto out = moobox::optimize_population(p, rp, kInf, 1e-6, 2, local, &launched);
    CHECK(launched >= 1);
    REQUIRE(out.size() == 2);
    bool found_start = false;
    bool found_refined = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.members[i].x() == Vec{3.0}) found_start = true;
        if (out.members[i].x() == Vec{2.0}) found_refined = true;
    }
    CHECK(found_start);
    CHECK(found_refined);
}

TEST_CASE("nsma with a long refinement period reduces to nsga2 in surrogate bounds") {
    const auto p = moobox::make_problem(moobox::ProblemId{moobox::ProblemFamily::ZDT1, 4});
    const auto X0 = moobox::initial_points(p, 10);

    NsmaParams params;
    params.genetic.pop_size = 10;
    params.n_opt = 1000000;  // never reached
    params.shift = 1e9;      // surrogate box saturates to the original box
    GenerationBudget budget;
    budget.max_generations = 12;

    CounterRng r1(3);
    const auto memetic = moobox::nsma_run(p, X0, params, budget, r1);
    CounterRng r2(3);
    const auto genetic = moobox::nsga2(p, X0, params.genetic, budget, r2);

    REQUIRE(memetic.size() == genetic.size());
    for (std::size_t i = 0; i < memetic.size(); ++i) CHECK(memetic[i].x() == genetic[i].x());
    CHECK(r1.draws() == r2.draws());
}

TEST_CASE("nsma refines only on schedule and keeps the population size") {
    const auto p = moobox::make_problem(moobox::ProblemId{moobox::ProblemFamily::ZDT1, 4});
    const auto X0 = moobox::initial_points(p, 8);

    NsmaParams params;
    params.genetic.pop_size = 8;
    params.n_opt = 3;
    GenerationBudget budget;
    budget.max_generations = 7;

    std::vector<GenerationTrace> traces;
    CounterRng rng(5);
    const auto out = moobox::nsma_run(p, X0, params, budget, rng,
                                      [&](const GenerationTrace& t) { traces.push_back(t); });
    CHECK(out.size() == 8);
    for (const auto& ind : out) CHECK(p.in_bounds(ind.x()));

    REQUIRE(traces.size() == 7);
    int launched_total = 0;
    for (const auto& t : traces) {
        CHECK(t.objectives.size() == 8);
        // Refinement may only fire on generations 3 and 6 of the schedule.
        const bool scheduled = (t.generation + 1) % 3 == 0;
        if (!scheduled) CHECK(t.local_searches == 0);
        launched_total += t.local_searches;
        CHECK(t.eps > 0.0);
    }
    CHECK(launched_total > 0);

    // The efficient front only improves: no earlier non-dominated objective
    // vector strictly dominates a later one.
    for (std::size_t g = 1; g < traces.size(); ++g) {
        const auto prev = oracle::nondominated(traces[g - 1].objectives);
        const auto cur = oracle::nondominated(traces[g].objectives);
        for (const auto ci : cur)
            for (const auto pi : prev)
                CHECK_FALSE(oracle::dominates(traces[g - 1].objectives[pi],
                                              traces[g].objectives[ci]));
    }
}

TEST_CASE("nsma is reproducible for a fixed seed") {
    const auto p = moobox::make_problem(moobox::ProblemId{moobox::ProblemFamily::ZDT1, 5});
    const auto X0 = moobox::initial_points(p, 12);
    NsmaParams params;
    params.genetic.pop_size = 12;
    params.n_opt = 2;
    GenerationBudget budget;
    budget.max_generations = 8;

    CounterRng r1(77);
    const auto a = moobox::nsma_run(p, X0, params, budget, r1);
    CounterRng r2(77);
    const auto b = moobox::nsma_run(p, X0, params, budget, r2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].x() == b[i].x());
}

TEST_CASE("the refinement tolerance schedule decays to its floor") {
    const NsmaParams params;
    CHECK(params.eps_at(0) == 1e-2);
    CHECK(params.eps_at(1) == 0.5e-2);
    CHECK(params.eps_at(2) == 0.25e-2);
    CHECK(params.eps_at(40) == params.eps_floor);
}
