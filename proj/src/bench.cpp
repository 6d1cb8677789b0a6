#include "moobox/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "moobox/descent.hpp"
#include "moobox/dominance.hpp"
#include "moobox/genetic.hpp"
#include "moobox/nsma.hpp"
#include "moobox/rng.hpp"

namespace moobox {

namespace {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Fresh problem instance whose eval/jac callables bump the given counters.
// Each run owns its own instance, so plain integers are safe.
ProblemSpec counted_problem(const ProblemId& id, const std::shared_ptr<std::uint64_t>& evals,
                            const std::shared_ptr<std::uint64_t>& jacs) {
    ProblemSpec p = make_problem(id);
    auto base_eval = p.eval;
    auto base_jac = p.jac;
    p.eval = [evals, base_eval](const Vec& x) {
        ++*evals;
        return base_eval(x);
    };
    p.jac = [jacs, base_jac](const Vec& x) {
        ++*jacs;
        return base_jac(x);
    };
    return p;
}

std::vector<Individual> dispatch_solver(const ProblemSpec& p, const RunConfig& config,
                                        const std::vector<Individual>& starts,
                                        std::optional<Clock::time_point> deadline) {
    if (config.solver == "nsga2") {
        GeneticParams params;
        params.pop_size = config.population;
        GenerationBudget budget{config.max_generations, deadline};
        CounterRng rng(config.seed);
        return nsga2(p, starts, params, budget, rng);
    }
    if (config.solver == "nsma") {
        NsmaParams params;
        params.genetic.pop_size = config.population;
        GenerationBudget budget{config.max_generations, deadline};
        CounterRng rng(config.seed);
        return nsma_run(p, starts, params, budget, rng);
    }
    if (config.solver == "fpga") {
        // The sweep algorithm wants a mutually non-dominated starting set.
        std::vector<Vec> fs;
        fs.reserve(starts.size());
        for (const auto& ind : starts) fs.push_back(ind.fx());
        const auto keep = nondominated_indices(fs, ObjectiveSubset::full(p.m));
        std::vector<Individual> filtered;
        filtered.reserve(keep.size());
        for (std::size_t idx : keep) filtered.push_back(starts[idx]);

        DescentBudget budget;
        budget.max_iters = std::numeric_limits<int>::max();
        if (config.max_generations)
            budget.max_iters = static_cast<int>(std::min<std::int64_t>(
                *config.max_generations, std::numeric_limits<int>::max()));
        budget.eps = 0.0;
        budget.deadline = deadline;
        return fpga(p, filtered, budget);
    }
    throw std::invalid_argument("unknown solver: " + config.solver);
}

// Index of the record best_of_k keeps: highest purity against the pooled
// reference of all successful runs, lowest seed on a tie.
std::size_t select_best(const std::vector<RunRecord>& records) {
    std::vector<FrontSet> fronts;
    for (const auto& r : records)
        if (!r.failed) fronts.push_back(r.front);
    if (fronts.empty()) return records.size();
    const FrontSet ref = reference_front(fronts);

    std::size_t best = records.size();
    double best_purity = -1.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].failed) continue;
        const auto score = purity(records[i].front, ref);
        const double value = score ? *score : 0.0;
        const bool wins = best == records.size() || value > best_purity ||
                          (value == best_purity && records[i].seed < records[best].seed);
        if (wins) {
            best = i;
            best_purity = value;
        }
    }
    return best;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MOOBOX_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v <= 4096) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ordered_json encode_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0.0 ? "inf" : "-inf";
}

double decode_number(const ordered_json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw std::invalid_argument("front file: unrecognized number string '" + s + "'");
    }
    if (!j.is_number()) throw std::invalid_argument("front file: expected a number");
    return j.get<double>();
}

Vec decode_vector(const ordered_json& j) {
    if (!j.is_array()) throw std::invalid_argument("front file: expected an array");
    Vec out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(decode_number(e));
    return out;
}

}  // namespace

bool is_known_solver(const std::string& solver) {
    return solver == "nsma" || solver == "nsga2" || solver == "fpga";
}

bool is_stochastic_solver(const std::string& solver) {
    return solver == "nsma" || solver == "nsga2";
}

RunRecord run(const RunConfig& config) {
    if (!is_known_solver(config.solver))
        throw std::invalid_argument("unknown solver: " + config.solver);
    if (config.population < 1) throw std::invalid_argument("population must be positive");
    if (!config.max_generations && !(config.budget_seconds > 0.0))
        throw std::invalid_argument("budget_seconds must be positive");

    auto evals = std::make_shared<std::uint64_t>(0);
    auto jacs = std::make_shared<std::uint64_t>(0);
    const ProblemSpec p = counted_problem(config.problem, evals, jacs);

    RunRecord rec;
    rec.solver = config.solver;
    rec.problem = p.name;
    rec.n = p.n;
    rec.seed = is_stochastic_solver(config.solver) ? config.seed : 0;
    rec.budget_seconds = config.budget_seconds;
    rec.front.label = config.solver;

    // A generation-capped run ignores the clock entirely so its output is a
    // pure function of the configuration.
    std::optional<Clock::time_point> deadline;
    if (!config.max_generations)
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(config.budget_seconds));

    const auto start = Clock::now();
    try {
        const std::vector<Individual> starts = initial_points(p, config.population);
        const std::vector<Individual> final_pop = dispatch_solver(p, config, starts, deadline);
        rec.wall_seconds = seconds_since(start);

        std::vector<Vec> fs;
        fs.reserve(final_pop.size());
        for (const auto& ind : final_pop) fs.push_back(ind.fx());
        const auto keep = fs.empty()
                              ? std::vector<std::size_t>{}
                              : nondominated_indices(fs, ObjectiveSubset::full(p.m));
        for (std::size_t idx : keep) {
            rec.front.points.push_back(final_pop[idx].fx());
            rec.decisions.push_back(final_pop[idx].x());
        }
    } catch (const std::exception& e) {
        rec.wall_seconds = seconds_since(start);
        rec.failed = true;
        rec.failure = e.what();
        rec.front.points.clear();
        rec.decisions.clear();
    }
    rec.evals = *evals;
    rec.jac_evals = *jacs;
    return rec;
}

RunRecord best_of_k(const RunConfig& base, const std::vector<std::uint64_t>& seeds) {
    if (!is_stochastic_solver(base.solver))
        throw std::invalid_argument("best_of_k needs a stochastic solver");
    if (seeds.empty()) throw std::invalid_argument("best_of_k: no seeds");

    std::vector<RunRecord> records;
    records.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        RunConfig cfg = base;
        cfg.seed = seed;
        records.push_back(run(cfg));
    }

    const std::size_t best = select_best(records);
    if (best == records.size()) {
        RunRecord rec = records.back();
        rec.failed = true;
        rec.failure = "all " + std::to_string(seeds.size()) + " runs failed; last: " + rec.failure;
        rec.front.points.clear();
        rec.decisions.clear();
        return rec;
    }
    return records[best];
}

CompareResult compare(const CompareConfig& config) {
    if (config.solvers.empty()) throw std::invalid_argument("compare: no solvers");
    if (config.problems.empty()) throw std::invalid_argument("compare: no problems");
    if (config.seeds.empty()) throw std::invalid_argument("compare: no seeds");
    for (const auto& s : config.solvers)
        if (!is_known_solver(s)) throw std::invalid_argument("unknown solver: " + s);
    for (const auto& id : config.problems) make_problem(id);  // fail fast on bad combos

    struct Cell {
        ProblemId problem;
        std::string solver;
        std::vector<std::size_t> job_indices;
    };
    std::vector<Cell> cells;
    std::vector<RunConfig> jobs;
    for (const auto& id : config.problems)
        for (const auto& solver : config.solvers) {
            Cell cell{id, solver, {}};
            RunConfig cfg;
            cfg.solver = solver;
            cfg.problem = id;
            cfg.budget_seconds = config.budget_seconds;
            cfg.population = config.population;
            cfg.max_generations = config.max_generations;
            if (is_stochastic_solver(solver)) {
                for (std::uint64_t seed : config.seeds) {
                    cfg.seed = seed;
                    cell.job_indices.push_back(jobs.size());
                    jobs.push_back(cfg);
                }
            } else {
                cfg.seed = 0;
                cell.job_indices.push_back(jobs.size());
                jobs.push_back(cfg);
            }
            cells.push_back(std::move(cell));
        }

    // Fixed job list, one result slot per job: the outcome is independent of
    // how the worker threads interleave.
    std::vector<RunRecord> results(jobs.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::min<int>(resolve_workers(config.workers),
                                      static_cast<int>(jobs.size()));
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                results[i] = run(jobs[i]);
            } catch (const std::exception& e) {
                results[i].failed = true;
                results[i].failure = e.what();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    CompareResult out;
    const auto metrics_start = Clock::now();

    // Collapse each cell to its representative record.
    std::vector<RunRecord> chosen;
    chosen.reserve(cells.size());
    for (const auto& cell : cells) {
        std::vector<RunRecord> cell_records;
        for (std::size_t i : cell.job_indices) cell_records.push_back(results[i]);
        const std::size_t best = select_best(cell_records);
        if (best == cell_records.size()) {
            RunRecord rec = cell_records.back();
            rec.failed = true;
            rec.failure = "all " + std::to_string(cell_records.size()) +
                          " runs failed; last: " + rec.failure;
            rec.front.points.clear();
            rec.decisions.clear();
            chosen.push_back(std::move(rec));
        } else {
            chosen.push_back(cell_records[best]);
        }
    }

    // Score every cell against its problem's cross-solver reference front.
    for (std::size_t pi = 0; pi < config.problems.size(); ++pi) {
        const std::size_t first_cell = pi * config.solvers.size();
        std::vector<FrontSet> fronts;
        for (std::size_t si = 0; si < config.solvers.size(); ++si) {
            const RunRecord& rec = chosen[first_cell + si];
            if (!rec.failed && !rec.front.points.empty()) fronts.push_back(rec.front);
        }
        std::optional<FrontSet> ref;
        if (!fronts.empty()) ref = reference_front(fronts);

        for (std::size_t si = 0; si < config.solvers.size(); ++si) {
            const RunRecord& rec = chosen[first_cell + si];
            MetricRow row;
            row.problem = rec.problem.empty() ? family_name(config.problems[pi].family)
                                              : rec.problem;
            row.n = rec.n ? rec.n : config.problems[pi].n;
            row.solver = cells[first_cell + si].solver;
            row.front_size = rec.front.points.size();
            row.wall_seconds = rec.wall_seconds;
            row.evals = rec.evals;
            if (rec.failed) {
                out.any_failure = true;
            } else if (ref) {
                row.purity = purity(rec.front, *ref);
                row.nd_points = nd_points(rec.front, *ref);
                const bool biobjective =
                    !rec.front.points.empty() && rec.front.points.front().size() == 2;
                if (biobjective) {
                    row.gamma = gamma_spread(rec.front, *ref);
                    row.delta = delta_spread(rec.front, *ref);
                }
            }
            out.table.rows.push_back(std::move(row));
        }
    }

    out.selected = std::move(chosen);

    const auto by_key = [](const RunRecord& a, const RunRecord& b) {
        if (a.problem != b.problem) return a.problem < b.problem;
        if (a.n != b.n) return a.n < b.n;
        return a.solver < b.solver;
    };
    std::stable_sort(out.selected.begin(), out.selected.end(), by_key);
    std::stable_sort(out.table.rows.begin(), out.table.rows.end(),
                     [](const MetricRow& a, const MetricRow& b) {
                         if (a.problem != b.problem) return a.problem < b.problem;
                         if (a.n != b.n) return a.n < b.n;
                         return a.solver < b.solver;
                     });

    out.metrics_seconds = seconds_since(metrics_start);
    return out;
}

std::string front_file_json(const RunRecord& rec) {
    if (rec.front.points.size() != rec.decisions.size())
        throw std::invalid_argument("front_file_json: decision/objective count mismatch");

    ordered_json j;
    j["solver"] = rec.solver;
    j["problem"] = rec.problem;
    j["n"] = rec.n;
    j["seed"] = rec.seed;
    j["rng"] = std::string(CounterRng::algorithm_id);
    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < rec.front.points.size(); ++i) {
        ordered_json pt;
        ordered_json x = ordered_json::array();
        for (double v : rec.decisions[i]) x.push_back(encode_number(v));
        ordered_json F = ordered_json::array();
        for (double v : rec.front.points[i]) F.push_back(encode_number(v));
        pt["x"] = std::move(x);
        pt["F"] = std::move(F);
        points.push_back(std::move(pt));
    }
    j["points"] = std::move(points);
    return j.dump() + "\n";
}

RunRecord front_file_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    RunRecord rec;
    rec.solver = j.at("solver").get<std::string>();
    rec.problem = j.at("problem").get<std::string>();
    rec.n = j.at("n").get<int>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.front.label = rec.solver;
    for (const auto& pt : j.at("points")) {
        rec.decisions.push_back(decode_vector(pt.at("x")));
        rec.front.points.push_back(decode_vector(pt.at("F")));
    }
    return rec;
}

std::string front_file_name(const RunRecord& rec) {
    return rec.problem + "_n" + std::to_string(rec.n) + "_" + rec.solver + ".json";
}

std::vector<std::string> grid_defects(const MetricTable& table) {
    std::vector<std::string> solvers;
    std::vector<ProblemKey> keys;
    for (const auto& row : table.rows) {
        if (std::find(solvers.begin(), solvers.end(), row.solver) == solvers.end())
            solvers.push_back(row.solver);
        const ProblemKey key{row.problem, row.n};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    std::sort(solvers.begin(), solvers.end());
    std::sort(keys.begin(), keys.end());

    std::map<std::pair<std::string, std::string>, int> counts;
    for (const auto& row : table.rows)
        ++counts[{row.problem + " n=" + std::to_string(row.n), row.solver}];

    std::vector<std::string> defects;
    for (const auto& key : keys) {
        const std::string label = key.problem + " n=" + std::to_string(key.n);
        for (const auto& solver : solvers) {
            const auto it = counts.find({label, solver});
            if (it == counts.end())
                defects.push_back("missing cell: " + label + " solver=" + solver);
            else if (it->second > 1)
                defects.push_back("duplicate cell (" + std::to_string(it->second) +
                                  " rows): " + label + " solver=" + solver);
        }
    }
    return defects;
}

}  // namespace moobox
