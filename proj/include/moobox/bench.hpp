#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moobox/metrics.hpp"
#include "moobox/problems.hpp"
#include "moobox/types.hpp"

namespace moobox {

// Solver names accepted by run and compare: nsma, nsga2, fpga.
bool is_known_solver(const std::string& solver);
// nsma and nsga2 consume the seed; fpga is deterministic and ignores it.
bool is_stochastic_solver(const std::string& solver);

struct RunConfig {
    std::string solver;
    ProblemId problem;
    double budget_seconds = 120.0;
    std::uint64_t seed = 0;
    // Population size for the genetic loops; also the number of starting
    // points handed to every solver.
    int population = 100;
    // When set, the run stops after exactly this many generations (full
    // sweeps for fpga) and the wall-clock budget is ignored, which makes the
    // run reproducible byte for byte on any machine.
    std::optional<std::int64_t> max_generations;
};

// Everything one solver execution produced. decisions[i] maps to
// front.points[i].
struct RunRecord {
    std::string solver;
    std::string problem;
    int n = 0;
    std::uint64_t seed = 0;
    double budget_seconds = 0.0;
    FrontSet front;
    std::vector<Vec> decisions;
    double wall_seconds = 0.0;
    std::uint64_t evals = 0;      // objective evaluations
    std::uint64_t jac_evals = 0;  // Jacobian evaluations
    bool failed = false;
    std::string failure;
};

// Executes one solver under the given budget and returns the non-dominated
// front of its final population. Unknown solver names throw
// std::invalid_argument; any failure inside the solver is captured in the
// record instead of propagating.
RunRecord run(const RunConfig& config);

// Runs one seed per entry, then keeps the run whose front scores the highest
// purity against the reference built from all of this solver's own fronts.
// Ties go to the lowest seed. Only meaningful for stochastic solvers.
RunRecord best_of_k(const RunConfig& base, const std::vector<std::uint64_t>& seeds);

struct CompareConfig {
    std::vector<std::string> solvers;
    std::vector<ProblemId> problems;
    double budget_seconds = 120.0;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    int population = 100;
    std::optional<std::int64_t> max_generations;
    // Worker threads for the (solver, problem, seed) job pool. 0 reads the
    // MOOBOX_WORKERS environment variable, falling back to the hardware
    // thread count. Results do not depend on the worker count.
    int workers = 0;
};

struct CompareResult {
    MetricTable table;
    // The per-cell representative runs (best-of-k for stochastic solvers),
    // sorted by problem name, dimension, then solver.
    std::vector<RunRecord> selected;
    double metrics_seconds = 0.0;  // time spent scoring, excluded from budgets
    bool any_failure = false;
};

// Full experiment sweep: every solver on every problem, best-of-k per cell,
// metrics against the per-problem cross-solver reference front.
CompareResult compare(const CompareConfig& config);

// Front archive file: a JSON object {solver, problem, n, seed, rng, points}
// where each point carries its decision vector x and objective vector F.
// Numbers survive a round trip bit for bit; non-finite values are encoded as
// the strings "inf", "-inf" and "nan".
std::string front_file_json(const RunRecord& rec);
RunRecord front_file_from_json(const std::string& text);

// File name a record's front is archived under, without directory.
std::string front_file_name(const RunRecord& rec);

// Verifies that the table forms a complete (problem, n) x solver grid with
// exactly one row per cell. Returns one description per missing or
// duplicated cell; empty means the grid is sound.
std::vector<std::string> grid_defects(const MetricTable& table);

}  // namespace moobox
