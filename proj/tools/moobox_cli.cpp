#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI/CLI11.hpp>
#include <nlohmann/json.hpp>

#include "moobox/bench.hpp"
#include "moobox/metrics.hpp"
#include "moobox/problems.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

void write_text_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path.string());
    out << body;
    out.flush();
    if (!out) throw std::invalid_argument("write failed: " + path.string());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const moobox::ProblemInfo& info_for(moobox::ProblemFamily family) {
    const std::string name = moobox::family_name(family);
    for (const auto& info : moobox::problem_registry())
        if (info.name == name) return info;
    throw std::invalid_argument("no registry entry for " + name);
}

struct RunOpts {
    std::string solver;
    std::string problem;
    std::string out;
    int n = 0;
    double budget = 120.0;
    std::uint64_t seed = 0;
    std::int64_t gens = -1;
    int pop = 100;
};

struct CompareOpts {
    std::vector<std::string> solvers;
    std::vector<std::string> problems;
    std::vector<int> n_list;
    std::string out;
    double budget = 120.0;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::int64_t gens = -1;
    int pop = 100;
};

struct ProfileOpts {
    std::vector<std::string> tables;
    std::string metric;
    std::string out;
};

int resolve_dimension(const moobox::ProblemInfo& info, int requested) {
    if (info.fixed_n > 0) {
        if (requested != 0 && requested != info.fixed_n)
            throw std::invalid_argument(info.name + " has fixed dimension n=" +
                                        std::to_string(info.fixed_n));
        return info.fixed_n;
    }
    if (requested < info.min_n)
        throw std::invalid_argument(info.name + " needs --n of at least " +
                                    std::to_string(info.min_n));
    return requested;
}

int cmd_run(const RunOpts& o) {
    try {
        if (!moobox::is_known_solver(o.solver))
            throw std::invalid_argument("unknown solver: " + o.solver +
                                        " (expected nsma, nsga2 or fpga)");
        const auto family = moobox::parse_family(o.problem);
        const auto& info = info_for(family);

        moobox::RunConfig cfg;
        cfg.solver = o.solver;
        cfg.problem = {family, resolve_dimension(info, o.n)};
        cfg.budget_seconds = o.budget;
        cfg.seed = o.seed;
        cfg.population = o.pop;
        if (o.gens >= 0) cfg.max_generations = o.gens;

        const moobox::RunRecord rec = moobox::run(cfg);
        if (rec.failed) {
            std::cerr << "run failed: " << rec.failure << "\n";
            return kExitPartial;
        }
        fs::create_directories(o.out);
        const fs::path path = fs::path(o.out) / moobox::front_file_name(rec);
        write_text_file(path, moobox::front_file_json(rec));
        std::cout << "wrote " << path.string() << " (" << rec.front.points.size() << " points, "
                  << rec.wall_seconds << " s, " << rec.evals << " evals)\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_compare(const CompareOpts& o) {
    try {
        for (const auto& s : o.solvers)
            if (!moobox::is_known_solver(s))
                throw std::invalid_argument("unknown solver: " + s +
                                            " (expected nsma, nsga2 or fpga)");

        moobox::CompareConfig cfg;
        cfg.solvers = o.solvers;
        for (const auto& name : o.problems) {
            const auto family = moobox::parse_family(name);
            const auto& info = info_for(family);
            std::vector<int> dims;
            if (info.fixed_n > 0) {
                dims.push_back(info.fixed_n);
            } else {
                if (o.n_list.empty())
                    throw std::invalid_argument(info.name + " needs --n-list");
                for (int n : o.n_list) dims.push_back(resolve_dimension(info, n));
            }
            for (int n : dims) {
                bool seen = false;
                for (const auto& id : cfg.problems)
                    if (id.family == family && id.n == n) seen = true;
                if (!seen) cfg.problems.push_back({family, n});
            }
        }
        cfg.budget_seconds = o.budget;
        cfg.seeds = o.seeds;
        cfg.population = o.pop;
        if (o.gens >= 0) cfg.max_generations = o.gens;

        const moobox::CompareResult result = moobox::compare(cfg);

        fs::create_directories(o.out);
        const fs::path csv = fs::path(o.out) / "metrics.csv";
        write_text_file(csv, moobox::to_csv(result.table));

        std::size_t written = 0;
        for (const auto& rec : result.selected) {
            if (rec.failed) {
                std::cerr << "cell failed: " << rec.problem << " n=" << rec.n << " "
                          << rec.solver << ": " << rec.failure << "\n";
                continue;
            }
            write_text_file(fs::path(o.out) / moobox::front_file_name(rec),
                            moobox::front_file_json(rec));
            ++written;
        }
        std::cout << "wrote " << csv.string() << " and " << written << " front files\n";
        std::cout << "scoring took " << result.metrics_seconds
                  << " s (not counted against solver budgets)\n";
        return result.any_failure ? kExitPartial : kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_profile(const ProfileOpts& o) {
    try {
        moobox::MetricTable merged;
        for (const auto& file : o.tables) {
            const auto table = moobox::metric_table_from_csv(read_text_file(file));
            merged.rows.insert(merged.rows.end(), table.rows.begin(), table.rows.end());
        }

        const auto defects = moobox::grid_defects(merged);
        if (!defects.empty()) {
            for (const auto& d : defects) std::cerr << d << "\n";
            std::cerr << "error: tables do not form a complete problem x solver grid ("
                      << defects.size() << " defects)\n";
            return kExitConfig;
        }

        const auto profile = moobox::performance_profile(merged, o.metric);
        for (const auto& p : profile.excluded)
            std::cerr << "warning: no solver scored on " << p.problem << " n=" << p.n
                      << "; excluded from the profile\n";

        write_text_file(o.out, moobox::to_csv(profile));
        std::cout << "wrote " << o.out << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_problems_list(bool as_json) {
    const auto& registry = moobox::problem_registry();
    if (as_json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& info : registry) {
            nlohmann::ordered_json entry;
            entry["name"] = info.name;
            entry["objectives"] = info.objectives;
            entry["fixed_n"] = info.fixed_n;
            entry["min_n"] = info.min_n;
            entry["bounds"] = info.bounds;
            arr.push_back(std::move(entry));
        }
        std::cout << arr.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& info : registry) {
        std::string dims = info.fixed_n > 0 ? "n=" + std::to_string(info.fixed_n)
                                            : "n>=" + std::to_string(info.min_n);
        std::cout << info.name;
        for (std::size_t i = info.name.size(); i < 8; ++i) std::cout << ' ';
        std::cout << info.objectives << " objectives  " << dims << "  " << info.bounds << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark harness for the moobox multi-objective solvers"};
    app.require_subcommand(1);

    RunOpts run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "execute one solver on one problem");
    run_cmd->add_option("--solver", run_opts.solver, "nsma, nsga2 or fpga")->required();
    run_cmd->add_option("--problem", run_opts.problem, "problem name (see `problems list`)")
        ->required();
    run_cmd->add_option("--n", run_opts.n, "decision dimension");
    run_cmd->add_option("--budget", run_opts.budget, "wall-clock budget in seconds")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run_opts.seed, "rng seed (ignored by fpga)");
    run_cmd->add_option("--gens", run_opts.gens,
                        "stop after this many generations instead of on the clock")
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--pop", run_opts.pop, "population size and starting-point count")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", run_opts.out, "output directory")->required();

    CompareOpts cmp_opts;
    CLI::App* cmp_cmd =
        app.add_subcommand("compare", "sweep solvers over problems and score the fronts");
    cmp_cmd->add_option("--solvers", cmp_opts.solvers, "comma-separated solver names")
        ->required()
        ->delimiter(',');
    cmp_cmd->add_option("--problems", cmp_opts.problems, "comma-separated problem names")
        ->required()
        ->delimiter(',');
    cmp_cmd->add_option("--n-list", cmp_opts.n_list,
                        "dimensions for the free-dimension problems")
        ->delimiter(',');
    cmp_cmd->add_option("--budget", cmp_opts.budget, "per-run wall-clock budget in seconds")
        ->check(CLI::PositiveNumber);
    cmp_cmd->add_option("--seeds", cmp_opts.seeds, "seeds for the stochastic solvers")
        ->delimiter(',');
    cmp_cmd->add_option("--gens", cmp_opts.gens,
                        "stop each run after this many generations instead of on the clock")
        ->check(CLI::NonNegativeNumber);
    cmp_cmd->add_option("--pop", cmp_opts.pop, "population size and starting-point count")
        ->check(CLI::PositiveNumber);
    cmp_cmd->add_option("--out", cmp_opts.out, "output directory")->required();

    ProfileOpts prof_opts;
    CLI::App* prof_cmd =
        app.add_subcommand("profile", "performance profile from metric tables");
    prof_cmd->add_option("--tables", prof_opts.tables, "comma-separated metric CSV files")
        ->required()
        ->delimiter(',');
    prof_cmd->add_option("--metric", prof_opts.metric, "purity, gamma, delta or nd_points")
        ->required();
    prof_cmd->add_option("--out", prof_opts.out, "output CSV file")->required();

    bool problems_json = false;
    CLI::App* problems_cmd = app.add_subcommand("problems", "problem registry");
    problems_cmd->require_subcommand(1);
    CLI::App* list_cmd = problems_cmd->add_subcommand("list", "list supported problems");
    list_cmd->add_flag("--json", problems_json, "emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*run_cmd) return cmd_run(run_opts);
    if (*cmp_cmd) return cmd_compare(cmp_opts);
    if (*prof_cmd) return cmd_profile(prof_opts);
    if (*problems_cmd) return cmd_problems_list(problems_json);
    return kExitConfig;
}
