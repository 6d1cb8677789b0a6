// End-to-end gate: ten release criteria, one printed verdict line each.
// Every case accumulates its checks into a Gate so the summary line reflects
// the whole criterion even when individual CHECKs already pinpoint the spot.
#include <doctest/doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "moobox/bench.hpp"
#include "moobox/descent.hpp"
#include "moobox/directions.hpp"
#include "moobox/dominance.hpp"
#include "moobox/genetic.hpp"
#include "moobox/linesearch.hpp"
#include "moobox/lp.hpp"
#include "moobox/metrics.hpp"
#include "moobox/problems.hpp"
#include "moobox/types.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using moobox::Individual;
using moobox::ObjectiveSubset;
using moobox::ProblemSpec;
using moobox::Vec;

struct Gate {
    bool ok = true;
    bool note(bool cond) {
        ok = ok && cond;
        return cond;
    }
};

bool announce(int id, const char* name, bool ok) {
    std::printf("[acceptance] %02d %-44s %s\n", id, name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    return ok;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

TEST_CASE("direction subproblem matches enumeration oracles") {
    Gate g;
    const auto t0 = Clock::now();
    std::mt19937_64 r(9001);
    std::uniform_real_distribution<double> entry(-5.0, 5.0);

    int grid_checked_3d = 0;
    int grid_checked = 0;
    for (int t = 0; t < 500; ++t) {
        const int n = 1 + static_cast<int>(r() % 4);
        const int m = 1 + static_cast<int>(r() % 3);
        moobox::Matrix G(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
        std::vector<oracle::DVec> rows(static_cast<std::size_t>(m),
                                       oracle::DVec(static_cast<std::size_t>(n)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                const double v = entry(r);
                G(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            }
        const Vec lo(static_cast<std::size_t>(n), -1.0);
        const Vec hi(static_cast<std::size_t>(n), 1.0);

        const auto res = moobox::solve_minimax_box(G, lo, hi);
        bool inside = true;
        for (int j = 0; j < n; ++j)
            inside = inside && res.d[static_cast<std::size_t>(j)] >= lo[static_cast<std::size_t>(j)] &&
                     res.d[static_cast<std::size_t>(j)] <= hi[static_cast<std::size_t>(j)];
        CHECK(g.note(inside));
        CHECK(g.note(res.theta <= 1e-12));
        CHECK(g.note(oracle::worst_slope(rows, res.d) <= res.theta + 1e-8));

        const double want = oracle::minimax_theta_vertex(rows, lo, hi);
        CHECK(g.note(std::abs(res.theta - want) <= 1e-6));

        if (n <= 2 || (n == 3 && grid_checked_3d < 25)) {
            if (n == 3) ++grid_checked_3d;
            ++grid_checked;
            const double coarse = oracle::grid_minimax(rows, lo, hi, 1e-2, 2);
            CHECK(g.note(coarse >= res.theta - 1e-6));
            CHECK(g.note(coarse - res.theta <= 2e-2));
        }
    }
    CHECK(g.note(grid_checked >= 100));
    CHECK(g.note(seconds_since(t0) < 30.0));
    CHECK(announce(1, "direction solver vs enumeration oracles", g.ok));
}

TEST_CASE("stationarity certificates at known minimizers") {
    Gate g;
    const auto man = moobox::make_problem("MAN", 3);
    const auto mop1 = moobox::make_problem("MOP1", 1);

    // Single-objective minimizers certify as stationary for their own
    // objective: the selected gradient vanishes there.
    const Vec man_f1_min{1.0, 2.0, 3.0};
    const Vec man_f2_min{0.0, 0.0, 0.0};
    const double th1 = moobox::projected_descent(man, man_f1_min, ObjectiveSubset::single(0)).theta;
    const double th2 = moobox::projected_descent(man, man_f2_min, ObjectiveSubset::single(1)).theta;
    CHECK(g.note(th1 >= -1e-8));
    CHECK(g.note(th1 <= 0.0));
    CHECK(g.note(th2 >= -1e-8));
    CHECK(g.note(th2 <= 0.0));

    const double tm1 = moobox::projected_descent(mop1, Vec{0.0}, ObjectiveSubset::single(0)).theta;
    const double tm2 = moobox::projected_descent(mop1, Vec{2.0}, ObjectiveSubset::single(1)).theta;
    CHECK(g.note(tm1 >= -1e-8));
    CHECK(g.note(tm2 >= -1e-8));

    // Interior points far from any efficient point admit a common descent
    // direction with a clearly negative certificate.
    const ObjectiveSubset full2 = ObjectiveSubset::full(2);
    CHECK(g.note(moobox::projected_descent(mop1, Vec{3.0}, full2).theta < -1e-3));
    CHECK(g.note(moobox::projected_descent(mop1, Vec{-1.0}, full2).theta < -1e-3));
    CHECK(g.note(moobox::projected_descent(man, Vec{0.5, 0.5, 0.5}, full2).theta < -1e-3));
    CHECK(g.note(moobox::projected_descent(man, Vec{4.0, 4.0, 4.0}, full2).theta < -1e-3));

    CHECK(announce(2, "stationarity certificates", g.ok));
}

TEST_CASE("bounded front line search keeps its contract under fuzzing") {
    Gate g;
    std::mt19937_64 r(424242);
    const auto man = moobox::make_problem("MAN", 4);
    const auto zdt = moobox::make_problem("ZDT1", 4);
    const auto subsets = moobox::all_objective_subsets(2);

    long invoked = 0;
    long accepted = 0;
    long violations = 0;
    for (int trial = 0; trial < 4000 && invoked < 1000; ++trial) {
        const ProblemSpec& p = (trial % 2 == 0) ? man : zdt;
        const bool is_man = trial % 2 == 0;

        std::vector<Individual> cloud;
        for (int k = 0; k < 12; ++k) {
            Vec x(static_cast<std::size_t>(p.n));
            for (int j = 0; j < p.n; ++j) {
                const auto u = static_cast<std::size_t>(j);
                double lo = is_man ? -3.0 : p.lower[u];
                double hi = is_man ? 3.0 : p.upper[u];
                if (!is_man && j == 0) lo = 0.01;  // keep the sqrt branch smooth
                std::uniform_real_distribution<double> gene(lo, hi);
                x[u] = gene(r);
            }
            cloud.emplace_back(p, std::move(x));
        }
        const auto front = moobox::nondominated_subset(cloud, ObjectiveSubset::full(2));

        for (const Individual& xc : front) {
            for (const ObjectiveSubset& I : subsets) {
                const auto dir = moobox::try_direction(p, xc.x(), I);
                if (!dir || dir->theta >= -1e-8) continue;
                ++invoked;
                moobox::StepResult res;
                try {
                    res = moobox::bfals(p, I, std::span<const Individual>(front), xc, dir->d,
                                        dir->theta);
                } catch (const moobox::LineSearchFailure&) {
                    continue;
                }
                ++accepted;
                if (!p.in_bounds(res.x_new)) ++violations;
                if (res.alpha != std::ldexp(1.0, -res.halvings)) ++violations;
                for (const Individual& y : front)
                    if (oracle::dominates(I.project(y.fx()), I.project(res.f_new))) ++violations;
            }
        }
    }
    CHECK(g.note(invoked >= 1000));
    CHECK(g.note(accepted >= 200));
    CHECK(g.note(violations == 0));
    CHECK(announce(3, "bounded line search contract", g.ok));
}

namespace {

// One front-accumulating descent run plus its paper trail: halted within the
// cap, certified eps-stationary at the end, and every accepted point was
// non-dominated against the set as it stood when inserted.
void check_finite_descent(Gate& g, const ProblemSpec& p, const std::vector<Individual>& X0,
                          const Individual& x0, long* total_iters) {
    moobox::DescentBudget budget;
    budget.max_iters = 10000;
    budget.eps = 1e-5;
    const ObjectiveSubset full = ObjectiveSubset::full(p.m);

    const auto seq = moobox::fmopg(p, full, X0, x0, budget);
    *total_iters += static_cast<long>(seq.size());
    CHECK(g.note(seq.size() < 10000));

    const Individual& last = seq.empty() ? x0 : seq.back();
    const auto dir = moobox::try_direction(p, last.x(), full);
    CHECK(g.note(!dir || dir->theta >= -1e-5 - 1e-12));

    std::vector<Vec> seen;
    seen.reserve(X0.size() + seq.size());
    for (const auto& y : X0) seen.push_back(y.fx());
    long bad_insertions = 0;
    for (const auto& s : seq) {
        for (const auto& f : seen)
            if (oracle::dominates(f, s.fx())) ++bad_insertions;
        seen.push_back(s.fx());
    }
    CHECK(g.note(bad_insertions == 0));
}

}  // namespace

TEST_CASE("front descent halts finitely from spread starts") {
    Gate g;
    const auto t0 = Clock::now();
    long total_iters = 0;

    // 1-D pair of shifted parabolas: every spread start is its own run.
    const auto mop1 = moobox::make_problem("MOP1", 1);
    for (const Individual& s : moobox::initial_points(mop1, 10))
        check_finite_descent(g, mop1, {s}, s, &total_iters);

    // MAN in five dimensions: the candidate set is the diagonal spread and a
    // run is launched from every member that is a valid, non-dominated start.
    const auto man = moobox::make_problem("MAN", 5);
    int launched = 0;
    for (const int count : {9, 10, 21}) {
        const auto X0 = moobox::initial_points(man, count);
        std::vector<Vec> fs;
        fs.reserve(X0.size());
        for (const auto& y : X0) fs.push_back(y.fx());
        for (std::size_t i = 0; i < X0.size(); ++i) {
            if (!moobox::is_nondominated_at(fs, i, ObjectiveSubset::full(2))) continue;
            check_finite_descent(g, man, X0, X0[i], &total_iters);
            ++launched;
        }
    }
    CHECK(g.note(launched >= 3));
    CHECK(g.note(total_iters > 1000));
    CHECK(g.note(seconds_since(t0) < 60.0));
    CHECK(announce(4, "finite termination of front descent", g.ok));
}

TEST_CASE("sorting and crowding match brute force at scale") {
    Gate g;
    std::mt19937_64 r(505);
    std::uniform_real_distribution<double> coord(0.0, 1.0);

    long rank_mismatch = 0;
    long crowd_mismatch = 0;
    for (int t = 0; t < 200; ++t) {
        const int m = 2 + static_cast<int>(r() % 2);
        const int N = 2 + static_cast<int>(r() % 59);
        const auto p = testsup::identity_problem(m);

        std::vector<Individual> pop;
        std::vector<oracle::DVec> fs;
        for (int k = 0; k < N; ++k) {
            Vec x(static_cast<std::size_t>(m));
            if (k > 0 && r() % 10 == 0) {
                x = fs[static_cast<std::size_t>(k - 1)];  // exact duplicate
            } else {
                for (auto& v : x) v = coord(r);
            }
            fs.push_back(x);
            pop.emplace_back(p, std::move(x));
        }

        const auto rp = moobox::get_metrics(pop);
        const auto want_rank = oracle::domination_ranks(fs);
        const auto want_crowd = oracle::crowding_textbook(fs, want_rank);
        for (int k = 0; k < N; ++k) {
            const auto u = static_cast<std::size_t>(k);
            if (rp.rank[u] != want_rank[u]) ++rank_mismatch;
            const double a = rp.crowding[u];
            const double b = want_crowd[u];
            const bool same = (std::isinf(a) && std::isinf(b) && a == b) || std::abs(a - b) <= 1e-12;
            if (!same) ++crowd_mismatch;
        }
    }
    CHECK(g.note(rank_mismatch == 0));
    CHECK(g.note(crowd_mismatch == 0));
    CHECK(announce(5, "sort and crowding vs brute force", g.ok));
}

TEST_CASE("fixed seeds give byte identical archives") {
    Gate g;

    for (const char* solver : {"nsma", "nsga2"}) {
        moobox::RunConfig cfg;
        cfg.solver = solver;
        cfg.problem = {moobox::ProblemFamily::ZDT1, 6};
        cfg.seed = 42;
        cfg.population = 16;
        cfg.max_generations = 8;
        const auto a = moobox::run(cfg);
        const auto b = moobox::run(cfg);
        CHECK(g.note(!a.failed));
        CHECK(g.note(moobox::front_file_json(a) == moobox::front_file_json(b)));
        CHECK(g.note(a.evals == b.evals));
    }

    moobox::CompareConfig cc;
    cc.solvers = {"nsga2", "nsma"};
    cc.problems = {{moobox::ProblemFamily::ZDT1, 5}, {moobox::ProblemFamily::MAN, 4}};
    cc.seeds = {1, 2};
    cc.population = 10;
    cc.max_generations = 3;
    cc.workers = 1;
    const auto serial = moobox::compare(cc);
    cc.workers = 3;
    const auto parallel = moobox::compare(cc);
    CHECK(g.note(serial.selected.size() == parallel.selected.size()));
    if (serial.selected.size() == parallel.selected.size())
        for (std::size_t i = 0; i < serial.selected.size(); ++i)
            CHECK(g.note(moobox::front_file_json(serial.selected[i]) ==
                         moobox::front_file_json(parallel.selected[i])));

    CHECK(announce(6, "byte reproducibility of archives", g.ok));
}

TEST_CASE("memetic loop beats the plain genetic loop on MAN") {
    Gate g;
    const auto t0 = Clock::now();

    int gamma_wins = 0;
    int purity_wins = 0;
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        moobox::RunConfig cfg;
        cfg.problem = {moobox::ProblemFamily::MAN, 20};
        cfg.budget_seconds = 30.0;
        cfg.seed = seed;
        cfg.population = 20;

        cfg.solver = "nsma";
        const auto a = moobox::run(cfg);
        cfg.solver = "nsga2";
        const auto b = moobox::run(cfg);
        CHECK(g.note(!a.failed && !b.failed));

        const auto ref = moobox::reference_front({a.front, b.front});
        const auto ga = moobox::gamma_spread(a.front, ref);
        const auto gb = moobox::gamma_spread(b.front, ref);
        const auto pa = moobox::purity(a.front, ref);
        const auto pb = moobox::purity(b.front, ref);
        CHECK(g.note(ga.has_value() && gb.has_value() && pa.has_value() && pb.has_value()));
        if (ga && gb && *ga < *gb) ++gamma_wins;
        if (pa && pb && *pa >= *pb) ++purity_wins;
    }
    CHECK(g.note(gamma_wins >= 2));
    CHECK(g.note(purity_wins >= 2));
    CHECK(g.note(seconds_since(t0) <= 360.0));
    CHECK(announce(7, "memetic vs genetic front quality on MAN", g.ok));
}

TEST_CASE("memetic loop holds ground against the sweep solver on ZDT3") {
    Gate g;
    const auto t0 = Clock::now();

    int wins = 0;
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        moobox::RunConfig cfg;
        cfg.problem = {moobox::ProblemFamily::ZDT3, 20};
        cfg.budget_seconds = 30.0;
        cfg.seed = seed;

        cfg.solver = "nsma";
        const auto a = moobox::run(cfg);
        cfg.solver = "fpga";
        const auto b = moobox::run(cfg);
        CHECK(g.note(!a.failed && !b.failed));

        const auto ref = moobox::reference_front({a.front, b.front});
        if (moobox::nd_points(a.front, ref) >= moobox::nd_points(b.front, ref)) ++wins;
    }
    CHECK(g.note(wins >= 2));
    CHECK(g.note(seconds_since(t0) <= 360.0));
    CHECK(announce(8, "memetic vs sweep solver on ZDT3", g.ok));
}

TEST_CASE("reported metrics are self consistent") {
    Gate g;

    moobox::CompareConfig cc;
    cc.solvers = {"fpga", "nsga2", "nsma"};
    cc.problems = {{moobox::ProblemFamily::ZDT1, 5}, {moobox::ProblemFamily::MAN, 4}};
    cc.seeds = {1, 2};
    cc.population = 12;
    cc.max_generations = 4;
    cc.workers = 2;
    const auto result = moobox::compare(cc);
    CHECK(g.note(!result.any_failure));
    CHECK(g.note(result.table.rows.size() == 6));
    CHECK(g.note(result.selected.size() == result.table.rows.size()));

    for (std::size_t i = 0; i < result.table.rows.size(); ++i) {
        const auto& row = result.table.rows[i];
        const auto& rec = result.selected[i];
        CHECK(g.note(rec.problem == row.problem && rec.n == row.n && rec.solver == row.solver));
        CHECK(g.note(row.front_size == rec.front.points.size()));
        CHECK(g.note(row.front_size > 0));
        CHECK(g.note(row.purity.has_value() && row.nd_points.has_value()));
        if (!row.purity || !row.nd_points || row.front_size == 0) continue;

        // purity * front_size recovers the non-dominated count exactly: the
        // stored value is the correctly rounded quotient of those integers.
        CHECK(g.note(*row.purity == static_cast<double>(*row.nd_points) /
                                        static_cast<double>(row.front_size)));

        // Recount against the per-problem cross-solver reference.
        std::vector<moobox::FrontSet> group;
        for (const auto& other : result.selected)
            if (other.problem == row.problem && other.n == row.n) group.push_back(other.front);
        const auto ref = moobox::reference_front(group);
        CHECK(g.note(oracle::count_surviving(rec.front.points, ref.points) == *row.nd_points));

        long ref_dominated = 0;
        for (std::size_t a = 0; a < ref.points.size(); ++a)
            for (std::size_t b = 0; b < ref.points.size(); ++b)
                if (a != b && oracle::dominates(ref.points[a], ref.points[b])) ++ref_dominated;
        CHECK(g.note(ref_dominated == 0));
    }

    // An equally spaced front whose endpoints sit on the reference extremes
    // has zero gap deviation.
    moobox::FrontSet ref2{"reference", {{0.0, 1.0}, {1.0, 0.0}}};
    moobox::FrontSet even{"even", {}};
    for (int k = 0; k <= 5; ++k) {
        const double t = static_cast<double>(k) / 5.0;
        even.points.push_back({t, 1.0 - t});
    }
    const auto dv = moobox::delta_spread(even, ref2);
    CHECK(g.note(dv.has_value()));
    if (dv) CHECK(g.note(std::abs(*dv) <= 1e-12));

    CHECK(announce(9, "metric self consistency", g.ok));
}

TEST_CASE("jacobians agree with central differences") {
    Gate g;
    const auto t0 = Clock::now();
    std::mt19937_64 r(808);

    long violations = 0;
    long checked = 0;
    for (const auto& info : moobox::problem_registry()) {
        const int n = info.fixed_n != 0 ? info.fixed_n : std::max(info.min_n, 3);
        const auto p = moobox::make_problem(info.name, n);
        const bool floor_first = info.name == "ZDT1" || info.name == "ZDT3" || info.name == "ZDT4";
        // MAN's exponential sum saturates double precision long before the box
        // edge; sample where a step of 1e-6*(1+|x|) is still representable
        // against the function value, otherwise the difference quotient
        // measures round-off, not the derivative.
        const double lo_cap = info.name == "MAN" ? -10.0 : -600.0;
        const double hi_cap = info.name == "MAN" ? 50.0 : 600.0;

        for (int t = 0; t < 200; ++t) {
            Vec x(static_cast<std::size_t>(p.n));
            for (int j = 0; j < p.n; ++j) {
                const auto u = static_cast<std::size_t>(j);
                const double lo = std::max(p.lower[u], lo_cap);
                const double hi = std::min(p.upper[u], hi_cap);
                std::uniform_real_distribution<double> gene(lo, hi);
                x[u] = gene(r);
            }
            if (floor_first) x[0] = std::max(x[0], 0.01);

            const auto J = p.jac(x);
            const auto fd = oracle::fd_jacobian(p.eval, x, static_cast<std::size_t>(p.m));
            for (int i = 0; i < p.m; ++i)
                for (int j = 0; j < p.n; ++j) {
                    const double a = J(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                    const double b = fd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    ++checked;
                    if (!std::isfinite(a) || std::abs(a - b) > 1e-5 * std::max(1.0, std::abs(a)))
                        ++violations;
                }
        }
    }
    CHECK(g.note(checked >= 8 * 200 * 2));
    CHECK(g.note(violations == 0));
    CHECK(g.note(seconds_since(t0) < 30.0));
    CHECK(announce(10, "jacobians vs central differences", g.ok));
}
