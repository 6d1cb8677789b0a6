#include "moobox/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "moobox/dominance.hpp"

namespace moobox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr const char* kTableHeader =
    "problem,n,solver,purity,gamma,delta,nd_points,front_size,wall_seconds,evals";

double linf(const Vec& a, const Vec& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (std::isnan(d)) continue;
        best = std::max(best, d);
    }
    return best;
}

void require_biobjective(const FrontSet& f, const char* who) {
    for (const auto& p : f.points)
        if (p.size() != 2) throw std::invalid_argument(std::string(who) + ": needs exactly two objectives");
}

// Pointers into the front's points, stably sorted by the first objective so
// ties keep their original order.
std::vector<const Vec*> sorted_by_first(const FrontSet& front) {
    std::vector<const Vec*> order;
    order.reserve(front.points.size());
    for (const auto& p : front.points) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(),
                     [](const Vec* a, const Vec* b) { return (*a)[0] < (*b)[0]; });
    return order;
}

// Reference point with the smallest value in objective j; ties go to the
// earliest point.
const Vec* extreme(const std::vector<Vec>& pts, std::size_t j) {
    const Vec* best = &pts[0];
    for (const auto& p : pts)
        if (p[j] < (*best)[j]) best = &p;
    return best;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

FrontSet reference_front(const std::vector<FrontSet>& fronts) {
    if (fronts.empty()) throw std::invalid_argument("reference_front: no fronts given");
    std::size_t m = 0;
    for (const auto& f : fronts)
        for (const auto& p : f.points) {
            if (p.empty()) throw std::invalid_argument("reference_front: empty objective vector");
            if (m == 0) m = p.size();
            if (p.size() != m)
                throw std::invalid_argument("reference_front: fronts disagree on objective count");
        }

    FrontSet out;
    out.label = "reference";
    if (m == 0) return out;

    std::vector<Vec> pool;
    for (const auto& f : fronts) pool.insert(pool.end(), f.points.begin(), f.points.end());

    const auto keep = nondominated_indices(pool, ObjectiveSubset::full(static_cast<int>(m)));
    for (std::size_t idx : keep) {
        bool seen = false;
        for (const auto& q : out.points)
            if (q == pool[idx]) {
                seen = true;
                break;
            }
        if (!seen) out.points.push_back(pool[idx]);
    }
    return out;
}

std::size_t nd_points(const FrontSet& front, const FrontSet& reference) {
    std::size_t count = 0;
    for (const auto& p : front.points) {
        bool dominated = false;
        for (const auto& r : reference.points)
            if (dominates(r, p)) {
                dominated = true;
                break;
            }
        if (!dominated) ++count;
    }
    return count;
}

std::optional<double> purity(const FrontSet& front, const FrontSet& reference) {
    if (front.points.empty()) return std::nullopt;
    return static_cast<double>(nd_points(front, reference)) /
           static_cast<double>(front.points.size());
}

std::optional<double> gamma_spread(const FrontSet& front, const FrontSet& reference) {
    require_biobjective(front, "gamma_spread");
    require_biobjective(reference, "gamma_spread");
    if (front.points.empty() || reference.points.empty()) return std::nullopt;

    const auto order = sorted_by_first(front);
    const Vec* e1 = extreme(reference.points, 0);
    const Vec* e2 = extreme(reference.points, 1);

    double g = linf(*e1, *order.front());
    for (std::size_t i = 0; i + 1 < order.size(); ++i) g = std::max(g, linf(*order[i], *order[i + 1]));
    g = std::max(g, linf(*order.back(), *e2));
    return g;
}

std::optional<double> delta_spread(const FrontSet& front, const FrontSet& reference) {
    require_biobjective(front, "delta_spread");
    require_biobjective(reference, "delta_spread");
    if (front.points.size() < 2 || reference.points.empty()) return std::nullopt;

    const auto order = sorted_by_first(front);
    const Vec* e1 = extreme(reference.points, 0);
    const Vec* e2 = extreme(reference.points, 1);

    const double d_front = linf(*e1, *order.front());
    const double d_back = linf(*order.back(), *e2);

    std::vector<double> gaps;
    gaps.reserve(order.size() - 1);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) gaps.push_back(linf(*order[i], *order[i + 1]));

    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());

    double deviation = 0.0;
    for (double g : gaps) deviation += std::abs(g - mean);

    const double denom = d_front + d_back + static_cast<double>(gaps.size()) * mean;
    if (denom == 0.0) return 0.0;
    return (d_front + d_back + deviation) / denom;
}

namespace {

enum class MetricKind { Purity, Gamma, Delta, NdPoints };

MetricKind parse_metric(const std::string& name) {
    if (name == "purity") return MetricKind::Purity;
    if (name == "gamma") return MetricKind::Gamma;
    if (name == "delta") return MetricKind::Delta;
    if (name == "nd_points") return MetricKind::NdPoints;
    throw std::invalid_argument("unknown metric: " + name);
}

// Cost-like score for one table cell. Larger-is-better metrics are inverted;
// a missing or worthless value is an infinite cost.
double cost_of(const MetricRow& row, MetricKind kind) {
    switch (kind) {
        case MetricKind::Purity:
            if (!row.purity || !(*row.purity > 0.0)) return kInf;
            return 1.0 / *row.purity;
        case MetricKind::NdPoints:
            if (!row.nd_points || *row.nd_points == 0) return kInf;
            return 1.0 / static_cast<double>(*row.nd_points);
        case MetricKind::Gamma:
            if (!row.gamma || !(*row.gamma >= 0.0)) return kInf;
            return *row.gamma;
        case MetricKind::Delta:
            if (!row.delta || !(*row.delta >= 0.0)) return kInf;
            return *row.delta;
    }
    return kInf;
}

}  // namespace

ProfileResult performance_profile(const MetricTable& table, const std::string& metric,
                                  const std::vector<std::string>& solvers,
                                  const std::vector<ProblemKey>& problems) {
    const MetricKind kind = parse_metric(metric);
    if (solvers.empty()) throw std::invalid_argument("performance_profile: no solvers");
    if (problems.empty()) throw std::invalid_argument("performance_profile: no problems");

    const auto cost = [&](const ProblemKey& p, const std::string& s) {
        for (const auto& row : table.rows)
            if (row.n == p.n && row.problem == p.problem && row.solver == s)
                return cost_of(row, kind);
        return kInf;
    };

    ProfileResult result;
    std::vector<std::vector<double>> ratios(solvers.size());
    for (const auto& p : problems) {
        std::vector<double> t(solvers.size());
        double best = kInf;
        for (std::size_t i = 0; i < solvers.size(); ++i) {
            t[i] = cost(p, solvers[i]);
            best = std::min(best, t[i]);
        }
        if (best == kInf) {
            result.excluded.push_back(p);
            continue;
        }
        for (std::size_t i = 0; i < solvers.size(); ++i) {
            double r;
            if (best == 0.0)
                r = (t[i] == 0.0) ? 1.0 : kInf;
            else
                r = t[i] / best;
            ratios[i].push_back(r);
        }
    }

    const std::size_t included = problems.size() - result.excluded.size();

    std::vector<double> taus{1.0};
    for (const auto& rs : ratios)
        for (double r : rs)
            if (std::isfinite(r)) taus.push_back(r);
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

    for (std::size_t i = 0; i < solvers.size(); ++i) {
        ProfileCurve curve;
        curve.solver = solvers[i];
        if (included > 0) {
            for (double tau : taus) {
                std::size_t solved = 0;
                for (double r : ratios[i])
                    if (r <= tau) ++solved;
                curve.samples.push_back(
                    {tau, static_cast<double>(solved) / static_cast<double>(included)});
            }
        }
        result.curves.push_back(std::move(curve));
    }
    return result;
}

ProfileResult performance_profile(const MetricTable& table, const std::string& metric) {
    std::vector<std::string> solvers;
    std::vector<ProblemKey> problems;
    for (const auto& row : table.rows) {
        if (std::find(solvers.begin(), solvers.end(), row.solver) == solvers.end())
            solvers.push_back(row.solver);
        const ProblemKey key{row.problem, row.n};
        if (std::find(problems.begin(), problems.end(), key) == problems.end())
            problems.push_back(key);
    }
    std::sort(solvers.begin(), solvers.end());
    std::sort(problems.begin(), problems.end());
    return performance_profile(table, metric, solvers, problems);
}

std::string to_csv(const MetricTable& table) {
    std::string out(kTableHeader);
    out += '\n';
    for (const auto& r : table.rows) {
        out += r.problem;
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += r.solver;
        out += ',';
        out += r.purity ? format_double(*r.purity) : "NA";
        out += ',';
        out += r.gamma ? format_double(*r.gamma) : "NA";
        out += ',';
        out += r.delta ? format_double(*r.delta) : "NA";
        out += ',';
        out += r.nd_points ? std::to_string(*r.nd_points) : "NA";
        out += ',';
        out += std::to_string(r.front_size);
        out += ',';
        out += format_double(r.wall_seconds);
        out += ',';
        out += std::to_string(r.evals);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double_field(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("bad numeric field: '" + s + "'");
    return v;
}

std::uint64_t parse_u64_field(const std::string& s) {
    std::uint64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("bad integer field: '" + s + "'");
    return v;
}

int parse_int_field(const std::string& s) {
    int v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("bad integer field: '" + s + "'");
    return v;
}

}  // namespace

MetricTable metric_table_from_csv(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }

    if (lines.empty() || lines[0] != kTableHeader)
        throw std::invalid_argument("metric table: missing or unexpected header line");

    MetricTable table;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split_csv_line(lines[i]);
        if (f.size() != 10)
            throw std::invalid_argument("metric table: malformed row '" + lines[i] + "'");
        MetricRow row;
        row.problem = f[0];
        row.n = parse_int_field(f[1]);
        row.solver = f[2];
        if (f[3] != "NA") row.purity = parse_double_field(f[3]);
        if (f[4] != "NA") row.gamma = parse_double_field(f[4]);
        if (f[5] != "NA") row.delta = parse_double_field(f[5]);
        if (f[6] != "NA") row.nd_points = parse_u64_field(f[6]);
        row.front_size = parse_u64_field(f[7]);
        row.wall_seconds = parse_double_field(f[8]);
        row.evals = parse_u64_field(f[9]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_csv(const ProfileResult& profile) {
    std::string out = "solver,tau,rho\n";
    for (const auto& curve : profile.curves)
        for (const auto& s : curve.samples) {
            out += curve.solver;
            out += ',';
            out += format_double(s.tau);
            out += ',';
            out += format_double(s.rho);
            out += '\n';
        }
    return out;
}

}  // namespace moobox
